#!/usr/bin/env python3
"""
Setup script for the Basis Entropy Toolkit
Installs required dependencies and verifies installation
"""

import subprocess
import sys
import os


def install_requirements():
    """Install required packages from requirements.txt"""
    print("🔧 Installing required dependencies...")
    print("=" * 50)

    try:
        subprocess.check_call([
            sys.executable, "-m", "pip", "install", "-r", "requirements.txt"
        ])
        print("✅ All dependencies installed successfully!")
        return True
    except subprocess.CalledProcessError as e:
        print(f"❌ Error installing dependencies: {e}")
        return False


def verify_installation():
    """Verify that the dependencies and the toolkit modules import"""
    print("\n🔍 Verifying installation...")
    print("=" * 50)

    required_modules = [
        ("numpy", "numpy"),
        ("scipy.optimize", "scipy"),
        ("pytest", "pytest"),
        ("hypothesis", "hypothesis"),
        ("basis_entropy_app", "toolkit modules"),
    ]

    all_good = True
    for module_name, package_name in required_modules:
        try:
            __import__(module_name)
            print(f"✅ {package_name} - OK")
        except ImportError:
            print(f"❌ {package_name} - FAILED")
            all_good = False

    return all_good


def smoke_test():
    """Run one command end to end: Bell state in the computational product basis gains 1 bit"""
    print("\n🧪 Running smoke test...")
    print("=" * 50)

    import io
    from basis_entropy_app import BasisEntropyApp

    out, err = io.StringIO(), io.StringIO()
    code = BasisEntropyApp(out=out, err=err).run(["basis-entropy", "--input", "bell", "--basis", "product:compxcomp"])
    if code != 0 or out.getvalue().strip() != "1.000000":
        print(f"❌ Smoke test failed: {err.getvalue().strip() or out.getvalue().strip()}")
        return False
    print("✅ basis-entropy bell = 1.000000")
    return True


def main():
    """Main setup function"""
    print("🚀 Basis Entropy Toolkit - Setup")
    print("=" * 60)

    if not os.path.exists("requirements.txt"):
        print("❌ requirements.txt not found!")
        print("Please ensure you have all project files in the same directory.")
        return False

    if not install_requirements():
        return False

    if not verify_installation():
        print("\n❌ Some modules failed to install properly.")
        print("Please try installing manually:")
        print("pip install numpy scipy pytest hypothesis")
        return False

    if not smoke_test():
        return False

    print("\n🎉 Setup completed successfully!")
    print("=" * 60)
    print("Run a command with:")
    print("python main.py basis-entropy --input bell --basis product:compxcomp")
    print("\nRun the tests with:")
    print("python -m pytest")

    return True


if __name__ == "__main__":
    success = main()
    if not success:
        sys.exit(1)
