#!/usr/bin/env python3
"""Smoke test for the weylgate_py extension module.

Builds nothing itself: run `cargo build -p weylgate-py` (or --release)
first, then `python3 python/smoke_test.py`. The script locates the cdylib
under target/, exposes it as an importable module, and exercises the main
types and operations end to end.
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        REPO / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libweylgate_py.so", "weylgate_py.so", "libweylgate_py.dylib")
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the bindings first: cargo build -p weylgate-py")
    stage = Path(tempfile.mkdtemp(prefix="weylgate-py-"))
    shutil.copy2(built, stage / "weylgate_py.so")
    sys.path.insert(0, str(stage))
    import weylgate_py

    return weylgate_py


CHECKS = []


def check(name, condition):
    CHECKS.append((name, bool(condition)))
    print(f"  [{'ok' if condition else 'FAIL'}] {name}")


def main():
    wg = load_module()
    print(f"weylgate_py {wg.__version__}")

    # Pauli matrices and basic algebra.
    sx, sy, sz = wg.pauli("x"), wg.pauli("y"), wg.pauli("z")
    check("pauli x layout", sx.entry(0, 1) == 1 and sx.entry(0, 0) == 0)
    comm = sx.commutator(sy)
    check("[sx, sy] = 2i sz", abs(comm.entry(0, 0) - 2j) < 1e-14)
    check("anticommutator vanishes", sx.anticommutator(sy).frobenius_norm() < 1e-14)
    check("expm(i pi/2 sx) = i sx",
          sx.scaled(1j * math.pi / 2).expm().distance_up_to_phase(sx) < 1e-9)

    gammas = wg.dirac_gammas()
    check("gamma0 squares to identity",
          (gammas[0] @ gammas[0]).distance_up_to_phase(wg.Matrix.identity(4)) < 1e-9)

    # Weyl pair and qudit generators.
    shift, clock = wg.weyl_pair(3)
    zeta = complex(math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3))
    lhs, rhs = shift @ clock, (clock @ shift).scaled(zeta)
    check("UV = zeta VU at d=3", (lhs - rhs).frobenius_norm() < 1e-12)
    tgens = wg.qudit_generators(3, 2)
    check("qudit family has 2n generators", len(tgens) == 4)

    # Jordan-Wigner relations.
    a, adag = wg.jordan_wigner(2)
    acc = a[0] @ adag[0] + adag[0] @ a[0]
    check("{a0, a0+} = 1", (acc - wg.Matrix.identity(4)).frobenius_norm() < 1e-12)

    # Algebraic root identities.
    check("square-root identity", wg.square_root_identity_check([0.3 + 0.1j, -0.2, 0.5j, 0.8], 2) < 1e-10)
    check("d-th-root identity", wg.dth_root_identity_check([0.3 + 0.1j, -0.2], 3, 1) < 1e-9)

    # Closure dimensions: the quantitative universality statements.
    cl2 = wg.Generators.clifford(2).lie_closure()
    check("clifford n=2 closes to 10", cl2.dimension == 10)
    check("clifford n=2 not universal", not cl2.is_universal())
    gens2 = wg.Generators.clifford(2)
    triple = (gens2.matrix("e0") @ gens2.matrix("e1") @ gens2.matrix("e2")).scaled(1j)
    rescued = gens2.appended("e012", triple).lie_closure()
    check("third-order rescue reaches 15", rescued.dimension == 15 and rescued.is_universal())
    two_gate = wg.Generators.clifford_two_gate(2).lie_closure()
    check("clifford two-gate set universal", two_gate.is_universal() and two_gate.dimension == 15)
    tpm = wg.Generators.weyl_tpm(3, 1)
    closure = tpm.lie_closure()
    check("weyl t± (3,1) closes to 8", closure.dimension == 8 and closure.is_universal())
    check("certificates cover the basis", len(closure.certificates()) == 8)

    # Compile a small rotation and re-evaluate the sequence.
    target = tpm.matrix("t0+").scaled(0.4).expm()
    report = wg.compile_unitary(target, tpm, epsilon=0.01)
    check("compile converges", report["converged"])
    rebuilt = wg.evaluate_sequence(report["sequence"], tpm)
    check("sequence reproduces target",
          rebuilt.distance_up_to_phase(target) <= report["achieved_distance"] + 1e-9)

    # Processor: the canonical repeat program and the malfunction entropy.
    program = wg.Program("repeat { repeat U5 10 times; repeat U7 20 times } 3 times")
    check("tape length 90", program.flattened_len() == 90)
    table = {"U5": sx, "U7": wg.Matrix.identity(2)}
    out = wg.processor_run(program, table, [1.0, 0.0])
    check("30 NOTs return |0>", abs(out[0] - 1) < 1e-9)
    amp = 1 / math.sqrt(2)
    entropy = wg.superposition_malfunction(table, 0, 1, amp, amp, [1.0, 0.0])
    check("malfunction entropy is 1 bit", abs(entropy - 1.0) < 1e-6)
    cnot = wg.controlled_unitary({"a": wg.Matrix.identity(2), "b": sx})
    check("controlled unitary is unitary", cnot.is_unitary())

    failed = [name for name, ok in CHECKS if not ok]
    print(f"\n{len(CHECKS) - len(failed)}/{len(CHECKS)} checks passed")
    if failed:
        sys.exit(f"failing checks: {', '.join(failed)}")


if __name__ == "__main__":
    main()
