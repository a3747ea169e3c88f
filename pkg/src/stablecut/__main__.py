from stablecut.cli import main

main()
