"""
Entry point: ``python main.py <command> ...``; see ``src/cli.py``.
"""

from __future__ import annotations

from src.cli import main


if __name__ == "__main__":
    raise SystemExit(main())
