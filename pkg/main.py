#!/usr/bin/env python3
"""
Basis Entropy Toolkit
Main entry point for the command-line toolkit

Features:
- von Neumann and basis entropy of states given by keyword or matrix file
- Maximum / minimum basis entropy over general, local product and same-local bases
- Variational and closed-form quantum discord, discord detection
- Grover, Shor and decoherence basis-entropy traces written as CSV
- Saved run profiles with built-in templates

Usage:
    python main.py <command> [options]
    python main.py basis-entropy --input bell --basis product:compxcomp
    python main.py werner-sweep --steps 100 --out werner_sweep.csv
    python main.py grover --n 20 --full-trace --out grover_n20.csv
"""

import os
import sys
import traceback

# Add current directory to Python path for imports
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

try:
    from basis_entropy_app import BasisEntropyApp

    def main(argv=None) -> int:
        """Main entry point for the toolkit"""
        try:
            return BasisEntropyApp().run(sys.argv[1:] if argv is None else argv)
        except KeyboardInterrupt:
            print("\n🛑 Interrupted by user", file=sys.stderr)
            return 1

    if __name__ == "__main__":
        sys.exit(main())

except ImportError as e:
    print("❌ Import Error: Missing required modules", file=sys.stderr)
    print(f"Error details: {e}", file=sys.stderr)
    print("\n📦 Please install required dependencies:", file=sys.stderr)
    print("pip install -r requirements.txt", file=sys.stderr)
    print("\nRequired modules:", file=sys.stderr)
    print("- numpy (matrices, eigendecomposition, FFT)", file=sys.stderr)
    print("- scipy (Nelder-Mead search, entropy of distributions)", file=sys.stderr)
    sys.exit(1)

except Exception as e:
    print(f"❌ Startup Error: {e}", file=sys.stderr)
    traceback.print_exc()
    sys.exit(1)
