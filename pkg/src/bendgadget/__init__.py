"""bendgadget: NAE-SAT to 2-bend intersection gadgets, with certificates and checkers."""

__version__ = "0.1.0"
