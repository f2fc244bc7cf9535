"""Smoke test for the `mcq` extension module.

Build it first:
    cargo build --release -p mcq-py --features extension-module
then run this script from anywhere. The built library is copied next to a
temporary `mcq.so` so no installer is needed.
"""

import json
import os
import shutil
import sys
import tempfile


def load():
    try:
        import mcq
        return mcq
    except ImportError:
        pass
    root = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "..", ".."))
    for profile in ("release", "debug"):
        lib = os.path.join(root, "target", profile, "libmcq.so")
        if os.path.exists(lib):
            tmp = tempfile.mkdtemp()
            shutil.copy(lib, os.path.join(tmp, "mcq.so"))
            sys.path.insert(0, tmp)
            import mcq
            return mcq
    sys.exit("libmcq.so not found; build with --features extension-module")


def main():
    mcq = load()

    assert mcq.dihedral_quandle(3).quandle_type() == 2
    assert mcq.alexander_quandle_zn(5, 2).quandle_type() == 4

    s3 = mcq.mcq_from_group(mcq.symmetric_group(3))
    fam = mcq.z_family_mcq(mcq.dihedral_quandle(3))
    assert s3.order == 6 and fam.order == 6
    assert mcq.verify_mcq_json(s3.to_json()) is None
    assert mcq.iso(s3, s3) == list(range(6))
    assert mcq.iso(s3, fam) is None

    doc = json.loads(s3.to_json())
    doc["triangle"][1][2] = (doc["triangle"][1][2] + 1) % 6
    tag, witness = mcq.verify_mcq_json(json.dumps(doc))
    assert tag and witness

    z2, r2 = mcq.mcq_from_group(mcq.cyclic_group(2)), mcq.ring_zn(2)
    pairs = mcq.enumerate_pairs(z2, r2)
    assert len(pairs) == 1 and pairs[0].verify() is None
    assert pairs[0].extend().order == 4
    try:
        mcq.enumerate_pairs(z2, r2, budget=10)
        raise AssertionError("budget ignored")
    except mcq.ResourceLimitError:
        pass

    r3 = mcq.ring_zn(3)
    assert len(mcq.enumerate_tuples(z2, r3)) == 24
    t = mcq.Tuple.trivial(z2, r3)
    t2, (h, eta) = t.transport(7)
    assert t2.verify() is None
    assert t.equivalent_to(t2, h, eta) is None
    reduced, _ = t2.reduce()
    assert reduced.verify() is None
    assert mcq.recheck_certificate(t2.certify())

    m = mcq.module_power(r2, 2)
    t4 = mcq.Tuple.trivial(z2, r2, m)
    assert t4.extend().order == 8
    assert mcq.Tuple.from_json(t4.to_json()).to_json() == t4.to_json()

    bad = json.loads(t.to_json())
    bad["f3"][0][0][1] = 0
    tag, witness = mcq.Tuple.from_json(json.dumps(bad)).verify()
    assert tag == "(0-i)", tag

    print("smoke test passed")


if __name__ == "__main__":
    main()
