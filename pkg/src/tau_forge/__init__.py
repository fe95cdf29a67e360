"""tau-forge: exact verification of Hirota-type bilinear identities for
tau functions built as matrix elements of classical and quantum-group
representations.  All arithmetic is exact over rational functions of q."""

from ._kernels import BACKEND as kernel_backend

__version__ = "0.1.0"
__all__ = ["kernel_backend", "__version__"]
