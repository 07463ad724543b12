#!/usr/bin/env python3
"""LP backend for `moser --external`: solve_lp.py model.lp model.sol

Reads the tool's plain-text LP format, solves with HiGHS, and writes the
solution file the importer expects (status / objective / nonzero x lines).

The model is parsed straight into CSR buffers and handed to HiGHS through
scipy's low-level wrapper as one CSC matrix with per-row bounds, so the
only full-size allocations are the matrix itself and HiGHS's internal
copy. The public linprog interface would add several whole-matrix copies
(vstack plus format conversions), which is the difference between fitting
and dying on the larger models this tool exists for.
"""

import os
import sys
from array import array
from fractions import Fraction

import numpy as np

INF = float("inf")


def fail(msg):
    print("solve_lp: " + msg, file=sys.stderr)
    sys.exit(1)


def note(msg):
    if os.environ.get("MOSER_LP_DEBUG"):
        rss = "?"
        with open("/proc/self/status") as f:
            for line in f:
                if line.startswith("VmRSS"):
                    rss = line.split()[1] + "kB"
        print("solve_lp: %s (rss %s)" % (msg, rss), file=sys.stderr)


def parse_value(tok):
    if "/" in tok or "." in tok or "e" in tok or "E" in tok:
        return float(Fraction(tok))
    return float(int(tok))


def read_model(path):
    data = array("d")
    indices = array("i")
    indptr = array("q", [0])
    lhs = array("d")
    rhs = array("d")
    obj_terms = []
    free_vars = []
    n = 0
    with open(path, "r", buffering=1 << 20) as f:
        if f.readline().strip() != "minimize":
            fail("expected 'minimize'")
        for tok in f.readline().split():
            if tok == "0":
                continue
            s = tok.index("*")
            v = int(tok[s + 2:])
            obj_terms.append((v, parse_value(tok[:s])))
            if v >= n:
                n = v + 1
        if f.readline().strip() != "st":
            fail("expected 'st'")
        for line in f:
            if line.startswith("bounds"):
                break
            parts = line.split()
            if not parts:
                continue
            rel = parts[-2]
            b = parse_value(parts[-1])
            for tok in parts[1:-2]:
                if tok == "0":
                    continue
                s = tok.index("*")
                v = int(tok[s + 2:])
                data.append(parse_value(tok[:s]))
                indices.append(v)
                if v >= n:
                    n = v + 1
            indptr.append(len(indices))
            if rel == "<=":
                lhs.append(-INF)
                rhs.append(b)
            elif rel == ">=":
                lhs.append(b)
                rhs.append(INF)
            elif rel == "=":
                lhs.append(b)
                rhs.append(b)
            else:
                fail("bad relation '%s'" % rel)
        for line in f:
            if line.startswith("end"):
                break
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 2 or parts[1] != "free" or not parts[0].startswith("x"):
                fail("bad bounds line: " + line.strip())
            v = int(parts[0][1:])
            free_vars.append(v)
            if v >= n:
                n = v + 1
    return n, obj_terms, data, indices, indptr, lhs, rhs, free_vars


def solve_with_highs(n, c, A, lhs, rhs, lb, ub):
    from scipy.optimize._highspy._highs_wrapper import _highs_wrapper
    from scipy.optimize._highspy._core import HighsModelStatus as MS

    options = {"output_flag": False, "log_to_console": False, "threads": 1}
    res = _highs_wrapper(c, A.indptr, A.indices, A.data, lhs, rhs, lb, ub,
                         np.empty(0, dtype=np.uint8), options)
    status = res.get("status")
    if status == MS.kOptimal:
        return "optimal", res.get("fun", 0.0), res.get("x")
    if status == MS.kInfeasible:
        return "infeasible", None, None
    if status == MS.kUnbounded:
        return "unbounded", None, None
    return "numeric_failure", None, res.get("message")


def solve_with_linprog(n, c, A, lhs, rhs, lb, ub):
    """Public-API fallback for scipy versions without the low-level hook.
    Costs several extra whole-matrix copies inside linprog."""
    from scipy.optimize import linprog
    import scipy.sparse as sp

    eq = np.isfinite(lhs) & np.isfinite(rhs)
    le = np.isinf(lhs) & np.isfinite(rhs)
    ge = np.isfinite(lhs) & np.isinf(rhs)
    csr = A.tocsr()
    blocks, b_ub = [], []
    if le.any():
        blocks.append(csr[le])
        b_ub.append(rhs[le])
    if ge.any():
        blocks.append(-csr[ge])
        b_ub.append(-lhs[ge])
    A_ub = sp.vstack(blocks).tocsc() if blocks else None
    b_ub = np.concatenate(b_ub) if b_ub else None
    A_eq = csr[eq].tocsc() if eq.any() else None
    b_eq = rhs[eq] if eq.any() else None
    bounds = [(l if np.isfinite(l) else None, None) for l in lb]
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds,
                  method="highs")
    status = {0: "optimal", 2: "infeasible", 3: "unbounded"}.get(res.status,
                                                                 "numeric_failure")
    if status == "optimal":
        return status, res.fun, res.x
    return status, None, getattr(res, "message", None)


def main():
    if len(sys.argv) != 3:
        fail("usage: solve_lp.py model.lp model.sol")
    note("parsing " + sys.argv[1])
    n, obj_terms, data, indices, indptr, lhs, rhs, free_vars = read_model(sys.argv[1])
    note("parsed %d vars, %d rows, %d nonzeros" % (n, len(lhs), len(indices)))

    import scipy.sparse as sp

    m = len(lhs)
    A = sp.csr_matrix((np.frombuffer(data, dtype=np.float64),
                       np.frombuffer(indices, dtype=np.int32),
                       np.frombuffer(indptr, dtype=np.int64)),
                      shape=(m, n), copy=False)
    A = A.tocsc()
    del data, indices, indptr
    note("matrix in CSC form")

    c = np.zeros(n)
    for v, val in obj_terms:
        c[v] += val
    lb = np.zeros(n)
    for v in free_vars:
        lb[v] = -INF
    ub = np.full(n, INF)
    lhs = np.frombuffer(lhs, dtype=np.float64)
    rhs = np.frombuffer(rhs, dtype=np.float64)

    try:
        status, objective, x = solve_with_highs(n, c, A, lhs, rhs, lb, ub)
    except (ImportError, AttributeError) as e:
        note("low-level interface unavailable (%s); retrying via linprog" % e)
        status, objective, x = solve_with_linprog(n, c, A, lhs, rhs, lb, ub)
    note("solved: " + status)

    with open(sys.argv[2], "w") as out:
        out.write("status %s\n" % status)
        if status != "optimal":
            if x is not None:
                note("solver message: %s" % x)
            return
        out.write("objective %.17g\n" % objective)
        for j, v in enumerate(x):
            if v != 0.0:
                out.write("x%d %.17g\n" % (j, v))


if __name__ == "__main__":
    main()
