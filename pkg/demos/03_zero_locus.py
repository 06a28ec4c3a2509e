"""Tracing theta divisors: a smooth curve, and two elliptic curves meeting at a node.

Run with ``python demos/03_zero_locus.py``.  Pass ``--save cloud.json`` to dump
the traced points for plotting elsewhere.
"""

import json
import sys

import numpy as np

from genus2theta import Characteristic, PeriodMatrix
from genus2theta.locus import classify_point, cloud_components, trace_zero_curve, verify_reducible_structure

delta = Characteristic((1, 1), (1, 1))

# %% Generic period matrix: every traced zero is a smooth point of the curve.
generic = PeriodMatrix([[1j, 0.1 + 0.2j], [0.1 + 0.2j, 2j]])
cloud = trace_zero_curve(delta, generic, 64)
kinds = {classify_point(delta, generic, zr.z).kind.value for zr in cloud}
grads = [classify_point(delta, generic, zr.z).grad_norm for zr in cloud]
print(f"{len(cloud)} zeros, kinds {kinds}, smallest |grad_z| {min(grads):.3f}")
print("components at link 0.3:", cloud_components(generic, np.array([zr.z for zr in cloud]), 0.3))

# %% Block-diagonal period matrix: the divisor breaks into E1 x {0} and {0} x E2.
report = verify_reducible_structure(delta, PeriodMatrix([[1j]]), PeriodMatrix([[2j]]))
print(json.dumps(report.to_json(), indent=1))

# %% At the crossing the gradient vanishes but the Hessian does not.
node = classify_point(delta, PeriodMatrix.diagonal(1j, 2j), [0, 0])
print("node:", node.kind.value, "hessian det", node.hess_det)

if "--save" in sys.argv:
    path = sys.argv[sys.argv.index("--save") + 1]
    with open(path, "w") as fh:
        json.dump([[[z.real, z.imag] for z in zr.z] for zr in cloud], fh)
    print("wrote", path)
