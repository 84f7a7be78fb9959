"""Canonicalization kernel selection.

Prefers the compiled extension; falls back to the pure-Python version
transparently. ``benchmarks/bench_kernel.py`` compares the two.
"""

try:
    from nommon._speedups import min_coset, apply_positions

    USING_COMPILED = True
except ImportError:
    from nommon._kernel_py import min_coset, apply_positions

    USING_COMPILED = False

__all__ = ["min_coset", "apply_positions", "USING_COMPILED"]
