"""Deliberately broken variants of the action and the bracket.

Each mutant changes exactly one formula at one site.  :func:`run_mutant` runs
the sweeps that should notice the change; a mutant is *killed* when at least
one of them fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from superbms.algebra import Gen, Kind, Sector, SuperBMS
from superbms.linalg import Truncation
from superbms.modules import ModuleParams, RamondModule
from superbms.poly import V1, V2, Poly2
from superbms.probes import ProbeReport, sweep_module_axioms, sweep_sigma_hom, sweep_super_jacobi
from superbms.scalar import Scalar, as_scalar

__all__ = ["Mutant", "ACTION_MUTANTS", "BRACKET_MUTANTS", "MUTANTS", "run_mutant", "killed", "MUTANT_PARAMS"]


# -- action mutants (Ramond) ---------------------------------------------------


class LEvenUsesMH(RamondModule):
    """``L_m`` on the even part uses ``m*h`` in place of ``h_m``."""

    def hm_plain(self, m: int) -> Poly2:
        return self.h.scale(as_scalar(m))

    def L_even(self, m2, f):
        m = m2 // 2
        g = f.shift_v2(m)
        out = (V2 + self.hm_plain(m)) * g
        if m:
            out = out - (self._linear(m2) * g.d_dv1()).scale(as_scalar(m))
        return out.scale(self.lam_half_pow(m2))


class LOddDropsHalfM(RamondModule):
    """``L_m`` on the odd part loses its ``-m/2``."""

    def L_odd(self, m2, f):
        return self._l_core(m2, f, Fraction(0))


class WEvenSignFlip(RamondModule):
    """``W_m`` on the even part multiplies by ``u + m*alpha``."""

    def W_even(self, m2, f):
        lin = V1 + self.alpha * Fraction(m2, 2)
        return (lin * f.shift_v2(m2 // 2)).scale(self.lam_half_pow(m2))


class WOddDoubleAlpha(RamondModule):
    """``W_m`` on the odd part multiplies by ``u - 2m*alpha``."""

    def W_odd(self, m2, f):
        lin = V1 - self.alpha * m2
        return (lin * f.shift_v2(m2 // 2)).scale(self.lam_half_pow(m2))


class GEvenNoShift(RamondModule):
    """``G_m`` on the even part forgets the shift ``s -> s - m``."""

    def G_even(self, r2, f):
        return f.scale(self.lam_half_pow(self.g_even_pow(r2)))


class GOddSingleAlpha(RamondModule):
    """``G_m`` on the odd part multiplies by ``u - m*alpha``."""

    def G_odd(self, r2, f):
        lin = V1 - self.alpha * Fraction(r2, 2)
        return (lin * f.shift_v2(Fraction(r2, 2))).scale(self.lam_half_pow(self.g_odd_pow(r2)))


class CEvenIdentity(RamondModule):
    """``C1``, ``C2`` act as the identity on the even part."""

    def C_even(self, idx2, f):
        return f


class COddIdentity(RamondModule):
    """``C1``, ``C2`` act as the identity on the odd part."""

    def C_odd(self, idx2, f):
        return f


# -- bracket mutants -----------------------------------------------------------


class LLNoCentral(SuperBMS):
    """``[L_m, L_n]`` without its central term."""

    def ll(self, a2, b2):
        return {Gen(Kind.L, a2 + b2): Scalar((b2 - a2) // 2)}


class LWPlus(SuperBMS):
    """``[L_m, W_n]`` with ``n + m`` in place of ``n - m``."""

    def lw(self, a2, b2):
        out = super().lw(a2, b2)
        out[Gen(Kind.W, a2 + b2)] = Scalar((b2 + a2) // 2)
        return out


class LGFullM(SuperBMS):
    """``[L_m, G_r]`` with ``r - m`` in place of ``r - m/2``."""

    def lg(self, a2, r2):
        return {Gen(Kind.G, a2 + r2): Scalar(Fraction(r2 - a2, 2))}


class GGSingleW(SuperBMS):
    """``[G_r, G_s]`` with ``W`` in place of ``2W``."""

    def gg(self, r2, s2):
        out = super().gg(r2, s2)
        out[Gen(Kind.W, r2 + s2)] = Scalar(1)
        return out


@dataclass(frozen=True)
class Mutant:
    name: str
    family: str  # "action" or "bracket"
    factory: Callable
    description: str


def _m(name, family, cls) -> Mutant:
    return Mutant(name, family, cls, (cls.__doc__ or "").strip())


ACTION_MUTANTS = [
    _m("L-even", "action", LEvenUsesMH),
    _m("L-odd", "action", LOddDropsHalfM),
    _m("W-even", "action", WEvenSignFlip),
    _m("W-odd", "action", WOddDoubleAlpha),
    _m("G-even", "action", GEvenNoShift),
    _m("G-odd", "action", GOddSingleAlpha),
    _m("C-even", "action", CEvenIdentity),
    _m("C-odd", "action", COddIdentity),
]

BRACKET_MUTANTS = [
    _m("LL", "bracket", LLNoCentral),
    _m("LW", "bracket", LWPlus),
    _m("LG", "bracket", LGFullM),
    _m("GG", "bracket", GGSingleW),
]

MUTANTS = {m.name: m for m in ACTION_MUTANTS + BRACKET_MUTANTS}

# alpha != 0 and deg h >= 2 so that every term of every formula is visible
MUTANT_PARAMS = ModuleParams(Scalar(2), Scalar(1), V1 * V1 + 1)


def run_mutant(name: str, idx_bound=2, tr: Truncation = Truncation(2, 2)) -> list[ProbeReport]:
    """Run the sweeps relevant to a mutant and return their reports."""
    mutant = MUTANTS[name]
    if mutant.family == "action":
        module = mutant.factory(MUTANT_PARAMS)
        return [sweep_module_axioms(MUTANT_PARAMS, idx_bound, tr, module=module)]
    algebra = mutant.factory()
    reports = [
        sweep_super_jacobi(Sector.R, idx_bound, algebra),
        sweep_super_jacobi(Sector.NS, idx_bound, algebra),
        sweep_sigma_hom(idx_bound, algebra),
        sweep_module_axioms(MUTANT_PARAMS, idx_bound, tr, algebra),
    ]
    return reports


def killed(reports: list[ProbeReport]) -> bool:
    return any(not r.passed for r in reports)
