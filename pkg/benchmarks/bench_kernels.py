"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Each row runs the same call through both backends, checks that the answers
agree and reports the best wall time of ``--repeat`` runs.
"""

import argparse
import timeit

from igusazeta import _kernels_py
from igusazeta.finite_field import CharacterSpec
from igusazeta.kernels import poly_args
from igusazeta.polynomial import parse_polynomial

try:
    from igusazeta import _kernels
except ImportError:
    _kernels = None

EXAMPLE = parse_polynomial("x^3 + x*y + y^2 + z^2", 3)
WIDE = parse_polynomial("x^4*y + 3*y^3*z^2 + 2*x*z^5 + y^6 + x^2*y^2*z^2", 3)


def cases():
    c, e = poly_args(EXAMPLE)
    cw, ew = poly_args(WIDE)
    chi = CharacterSpec(31, 6)
    return [
        ("torus count, p=101", "count_zeros_torus", (cw, ew, 3, 101)),
        ("common zero search, p=53", "find_common_zero", ([(c, e), (cw, ew)], 3, 53)),
        ("character histogram, p=31 d=6", "char_index_histogram", (cw, ew, 3, 31, chi.dlog, 6)),
        ("p-adic orders, p=3 L=4", "padic_order_histogram", (c, e, 3, 3, 4)),
        ("p-adic orders, p=5 L=2", "padic_order_histogram", (cw, ew, 3, 5, 2)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")
        return
    print("%-32s %10s %10s %8s" % ("kernel", "cython s", "python s", "speedup"))
    for label, name, call_args in cases():
        fast, slow = getattr(_kernels, name), getattr(_kernels_py, name)
        if fast(*call_args) != slow(*call_args):
            raise SystemExit("backends disagree on %s" % label)
        tf = min(timeit.repeat(lambda: fast(*call_args), number=1, repeat=args.repeat))
        ts = min(timeit.repeat(lambda: slow(*call_args), number=1, repeat=args.repeat))
        print("%-32s %10.4f %10.4f %7.1fx" % (label, tf, ts, ts / tf))


if __name__ == "__main__":
    main()
