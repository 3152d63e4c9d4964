#!/usr/bin/env python3
"""
Setup script for TraceRing
Writes a .env file with the defaults for seeds, sample sizes and resource limits.
"""

import os
import sys
from pathlib import Path

SETTINGS = [
    ("TRACERING_SEED", "Default random seed", "7"),
    ("TRACERING_TRIALS", "Random matrix assignments per identity check", "20"),
    ("TRACERING_SIZE_BOUND", "Largest shear parameter or matrix entry when sampling", "3"),
    ("TRACERING_GB_BUDGET", "Groebner basis reduction-step budget", "1000000"),
    ("TRACERING_MAX_M", "Largest symmetrizer size without --allow-large", "5"),
    ("TRACERING_MAX_WORD_LENGTH", "Longest word accepted from user input", "64"),
]


def ask(name: str, description: str, default: str) -> str:
    while True:
        value = input(f"{description} [{default}]: ").strip() or default
        if value.isdigit():
            return value
        print(f"❌ {name} must be a non-negative integer.")


def setup_environment():
    """Interactive setup for environment variables."""
    print("🚀 TraceRing Setup")
    print("=" * 40)

    project_dir = Path(__file__).resolve().parent.parent
    env_file = project_dir / '.env'

    if env_file.exists():
        response = input("⚠️  .env file already exists. Overwrite? (y/N): ").lower().strip()
        if response not in ['y', 'yes']:
            print("Setup cancelled.")
            return

    print("\n📝 Press Enter to keep a default.")
    lines = ["# TraceRing Environment Variables", "# Auto-generated by setup.py", ""]
    for name, description, default in SETTINGS:
        lines.append(f"# {description}")
        lines.append(f"{name}={ask(name, description, default)}")
    lines += ["", "# Web interface", "# PORT=7860", "# TRACERING_SHARE=false", ""]

    try:
        env_file.write_text("\n".join(lines), encoding="utf-8")
        print(f"✅ Created .env file at: {env_file}")
        os.chmod(env_file, 0o600)
        print("🔒 Set owner-only permissions on .env file")
    except OSError as e:
        print(f"❌ Error creating .env file: {e}")
        return

    print("\n🎉 Setup complete!")
    print("\nNext steps:")
    print("1. Run: python run.py --cli suite identities")
    print("2. Or launch the workbench: python app.py")
    print("3. Open your browser to: http://localhost:7860")


def main():
    """Main setup function."""
    if len(sys.argv) > 1 and sys.argv[1] == '--help':
        print("TraceRing Setup Script")
        print("Usage: python setup.py")
        print("This script writes a .env file with TraceRing settings.")
        return

    setup_environment()


if __name__ == "__main__":
    main()
