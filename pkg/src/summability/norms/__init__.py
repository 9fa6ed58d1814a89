"""
Norms
=====
Coefficient tensors and the norms computed from them.

Included:
    - tensors: CoefficientTensor, BlockTensor, VectorSequence and the tensor JSON format
    - mixed: block restriction and nested mixed norms
    - forms: multilinear form evaluation and norm estimation
    - weak: weak l_p norms of finite vector sequences
"""

from .forms import (
    FormInstance,
    NormEstimate,
    NormMethod,
    estimate_norm,
    evaluate,
    exact_norm_closed,
    exact_norm_signs,
    holder_argmax,
    norm_ascent,
)
from .mixed import block_restrict, flat_norm, mixed_norm
from .tensors import BlockTensor, CoefficientTensor, VectorSequence
from .weak import WeakNormResult, weak_norm

__all__ = [
    "FormInstance", "NormEstimate", "NormMethod",
    "estimate_norm", "evaluate", "exact_norm_closed", "exact_norm_signs",
    "holder_argmax", "norm_ascent",
    "block_restrict", "flat_norm", "mixed_norm",
    "BlockTensor", "CoefficientTensor", "VectorSequence",
    "WeakNormResult", "weak_norm",
]
