#!/usr/bin/env python3
"""Write the q-expansion coefficients of the modular j-invariant.

j(q) = E4(q)^3 / Delta(q) = 1/q + 744 + sum_{n>=1} c_n q^n, with
E4 = 1 + 240 sum sigma_3(n) q^n and Delta = q prod (1 - q^n)^24.
Integer arithmetic only.
"""
import argparse


def sigma3(n):
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def j_coefficients(count):
    n = count + 2
    e4 = [1] + [240 * sigma3(k) for k in range(1, n)]
    e4_cubed = mul(mul(e4, e4, n), e4, n)
    # prod (1 - q^k)^24, then Delta / q is that product.
    prod = [1] + [0] * (n - 1)
    for k in range(1, n):
        factor = [0] * n
        factor[0] = 1
        factor[k] = -1
        for _ in range(24):
            prod = mul(prod, factor, n)
    # j * q = e4^3 / prod; invert prod as a power series with constant term 1.
    inv = [0] * n
    inv[0] = 1
    for m in range(1, n):
        inv[m] = -sum(prod[i] * inv[m - i] for i in range(1, m + 1))
    jq = mul(e4_cubed, inv, n)
    # jq[0] is the q^{-1} coefficient, jq[1] the constant, jq[m+1] is c_m.
    assert jq[0] == 1 and jq[1] == 744
    return [jq[m + 1] for m in range(1, count + 1)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=120)
    ap.add_argument("--out", default="data/j_coefficients.txt")
    args = ap.parse_args()
    coeffs = j_coefficients(args.count)
    assert coeffs[:3] == [196884, 21493760, 864299970]
    with open(args.out, "w") as f:
        f.write("# q-expansion of j = 1/q + 744 + sum c_n q^n, lines \"n c_n\".\n")
        f.write("# Generated by tools/gen_j_coefficients.py from E4^3/Delta in exact integer arithmetic.\n")
        for n, c in enumerate(coeffs, start=1):
            f.write(f"{n} {c}\n")


if __name__ == "__main__":
    main()
