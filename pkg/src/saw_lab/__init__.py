"""saw-lab: exact enumeration and pivot sampling for lattice self-avoiding walks."""

__version__ = "0.1.0"
