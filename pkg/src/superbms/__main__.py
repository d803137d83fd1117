from superbms.cli import main

main()
