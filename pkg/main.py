# main.py
from app.modules.congruences.cli.commands import main

if __name__ == "__main__":
    main()
