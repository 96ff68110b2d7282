from qme.cli import main

main()
