"""Independent reference implementations used to pin expected values.

Everything here is written directly from the defining formulas with mpmath
or brute-force enumeration and deliberately imports nothing from the
package under test.
"""

import itertools
import math

import mpmath as mp


def mp_lobachevsky(x, dps=50):
    """-integral_0^x log|2 sin t| dt via the Fourier series (1/2) sum sin(2nx)/n^2."""
    with mp.workdps(dps):
        xx = mp.mpf(x)
        total = mp.nsum(lambda n: mp.sin(2 * n * xx) / n**2, [1, mp.inf])
        return float(total / 2)


def mp_sixj(colors, r, dps=200):
    """Quantum 6j-symbol from the defining sum, evaluated at dps digits.

    Normalization: i^{sum of face half-sums} / (2 sin(2 pi / r)) times the
    four triangle square roots times the alternating z-sum; each square
    root takes the positive (or positive-imaginary) root of the real
    radicand {1}{x}!{y}!{w}!/{T+1}!.
    """
    with mp.workdps(dps):

        def qi(n):
            return 2j * mp.sin(2 * mp.pi * n / r)

        def qf(n):
            out = mp.mpc(1)
            for k in range(1, n + 1):
                out *= qi(k)
            return out

        n1, n2, n3, n4, n5, n6 = colors
        faces = [(n1, n2, n3), (n1, n5, n6), (n2, n4, n6), (n3, n4, n5)]
        T = [sum(f) // 2 for f in faces]
        Q = [
            (n1 + n2 + n4 + n5) // 2,
            (n1 + n3 + n4 + n6) // 2,
            (n2 + n3 + n5 + n6) // 2,
        ]

        def delta(a, b, c):
            num = (
                qf((a + b - c) // 2)
                * qf((a - b + c) // 2)
                * qf((-a + b + c) // 2)
                * qi(1)
            )
            rad = mp.re(num / qf((a + b + c) // 2 + 1))
            return mp.sqrt(rad) if rad >= 0 else 1j * mp.sqrt(-rad)

        acc = mp.mpc(0)
        for z in range(max(T), min(min(Q), r - 2) + 1):
            t = mp.mpc((-1) ** z) * qf(z + 1)
            for ti in T:
                t /= qf(z - ti)
            for qj in Q:
                t /= qf(qj - z)
            acc += t
        pre = mp.mpc(1j) ** (sum(T) % 4) / (2 * mp.sin(2 * mp.pi / r))
        out = pre * acc
        for a, b, c in faces:
            out *= delta(a, b, c)
        return complex(out)


_FACES = ((0, 1, 2), (0, 4, 5), (1, 3, 5), (2, 3, 4))


def triple_ok(a, b, c, r):
    s = a + b + c
    if max(a, b, c) > r - 2 or s % 2 or s > 2 * r - 4:
        return False
    return a <= b + c and b <= a + c and c <= a + b


def sextuple_ok(colors, r):
    return all(
        triple_ok(colors[i], colors[j], colors[k], r) for i, j, k in _FACES
    )


def naive_admissible_tuples(r):
    """All admissible sextuples at level r by a plain 6-deep product loop."""
    return [
        c
        for c in itertools.product(range(r - 1), repeat=6)
        if sextuple_ok(c, r)
    ]


def mp_delta(a, b, c, r, dps=60):
    """Triangle square-root factor alone, same conventions as mp_sixj."""
    with mp.workdps(dps):

        def qi(n):
            return 2j * mp.sin(2 * mp.pi * n / r)

        def qf(n):
            out = mp.mpc(1)
            for k in range(1, n + 1):
                out *= qi(k)
            return out

        num = (
            qf((a + b - c) // 2)
            * qf((a - b + c) // 2)
            * qf((-a + b + c) // 2)
            * qi(1)
        )
        rad = mp.re(num / qf((a + b + c) // 2 + 1))
        root = mp.sqrt(rad) if rad >= 0 else 1j * mp.sqrt(-rad)
        return complex(root)


def mp_dilog(z, dps=40):
    with mp.workdps(dps):
        return complex(mp.polylog(2, mp.mpc(z)))
