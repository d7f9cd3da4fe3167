"""Picks the compiled kernels when available, else the pure-Python ones.

Set ``IGUSAZETA_PURE_PYTHON=1`` to force the fallback.
"""

import os

BACKEND = "python"

if os.environ.get("IGUSAZETA_PURE_PYTHON", "") not in ("", "0"):
    from ._kernels_py import (  # noqa: F401
        char_index_histogram,
        count_zeros_torus,
        find_common_zero,
        padic_order_histogram,
    )
else:
    try:
        from ._kernels import (  # noqa: F401
            char_index_histogram,
            count_zeros_torus,
            find_common_zero,
            padic_order_histogram,
        )

        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import (  # noqa: F401
            char_index_histogram,
            count_zeros_torus,
            find_common_zero,
            padic_order_histogram,
        )


def poly_args(f):
    """``(coeffs, exps)`` lists for an :class:`~igusazeta.polynomial.IntPolynomial`."""
    support = f.support
    return [f.terms[e] for e in support], support
