#!/usr/bin/env python3
"""Regenerate data/joe-kuo-64.txt and the embedded default direction table.

Reads the primitive polynomials and initial direction numbers that Boost
ships in boost/random/detail/sobol_table.hpp (derived from the Joe & Kuo
new-joe-kuo-6 data) and re-emits the first 64 dimensions in the standard
Joe-Kuo text interchange format:

    d s a m_1 ... m_s

where `a` encodes the interior coefficients of the degree-s primitive
polynomial (the boost table stores the full binary encoding).
"""

import re
import sys

BOOST_TABLE = "/usr/include/boost/random/detail/sobol_table.hpp"
MAX_DEGREE = 15
DIMS = 64


def parse_arrays(text):
    def grab(name):
        m = re.search(name + r"\[[^\]]*\]\s*=\s*\{(.*?)\};", text, re.S)
        if not m:
            sys.exit(f"array {name} not found")
        return [int(v) for v in re.findall(r"\d+", m.group(1))]

    return grab(r"sobol_a"), grab(r"sobol_minit")


def main():
    with open(BOOST_TABLE) as f:
        polys, minit = parse_arrays(f.read())

    lines = ["d       s       a       m_i"]
    for dim in range(2, DIMS + 1):
        j = dim - 2
        poly = polys[j]
        s = poly.bit_length() - 1
        a = (poly >> 1) & ((1 << (s - 1)) - 1) if s > 1 else 0
        ms = minit[j * MAX_DEGREE: j * MAX_DEGREE + s]
        assert all(m % 2 == 1 and m < (1 << (k + 1)) for k, m in enumerate(ms)), dim
        lines.append(f"{dim}       {s}       {a}       " + " ".join(map(str, ms)))
    body = "\n".join(lines) + "\n"

    with open("data/joe-kuo-64.txt", "w") as f:
        f.write(body)

    with open("include/qmcuq/direction_data.hpp", "w") as f:
        f.write(
            "// SPDX-License-Identifier: Apache-2.0\n"
            "// Copyright Contributors to the qmc-uq Project.\n"
            "//\n"
            "// Default Sobol' direction numbers, dimensions 2..64, in the\n"
            "// Joe-Kuo text format (same content as data/joe-kuo-64.txt).\n"
            "// Generated by scripts/make_direction_table.py; do not edit.\n"
            "#pragma once\n\n"
            "namespace qmcuq::detail {\n\n"
            "inline constexpr char kDefaultDirectionTable[] = R\"TBL(" + body + ")TBL\";\n\n"
            "}  // namespace qmcuq::detail\n"
        )
    print(f"wrote {DIMS - 1} rows")


if __name__ == "__main__":
    main()
