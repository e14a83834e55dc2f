"""Regenerate the fixture corpus under fixtures/."""

import argparse
import json
from pathlib import Path

from ainfty import io
from ainfty.category import Mor
from ainfty.functor import identity_functor
from ainfty.internal_hom import build_counterexample, build_tensor_unit, solve_bifunctor_N, surjective_cover
from ainfty.zoo import PT, cone, dual, dual2, ground, interval


def inject_m3(a):
    """K[e1,e2] with one extra nonzero m3 entry."""
    mult = {k: dict(t) for k, t in a.mult.items()}
    e1, e2 = Mor(PT, PT, "e1"), Mor(PT, PT, "e2")
    mult[3] = {(e1, e1, e1): {e2: 1}}
    return a.with_mult(mult, arity_bound=3, name="K[e1,e2]+m3")


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--root", default=str(Path(__file__).resolve().parent.parent / "fixtures"))
    root = Path(p.parse_args().root)

    ce = root / "counterexample"
    ce.mkdir(parents=True, exist_ok=True)
    b = build_counterexample()
    for name, x in (("A", b.A), ("A_prime", b.A_prime), ("A0", b.A0), ("F1", b.F1), ("F2", b.F2),
                    ("J1", b.J1), ("J2", b.J2), ("g_cover", surjective_cover())):
        io.dump(x, ce / f"{name}.json")

    zoo = root / "zoo"
    zoo.mkdir(exist_ok=True)
    for name, a in (("ground", ground()), ("dual2", dual2()), ("dual", dual()), ("interval", interval()),
                    ("cone", cone())):
        io.dump(a, zoo / f"{name}.json")

    tu = root / "tensor-unit"
    tu.mkdir(exist_ok=True)
    d = build_tensor_unit(interval(), ground())
    io.dump(d.tensor, tu / "tensor.json")
    io.dump(d.R, tu / "reduced_aug_tensor.json")
    io.dump(d.P, tu / "P.json")
    io.dump(d.I, tu / "I.json")
    io.dump(solve_bifunctor_N(d, 3), tu / "N.json")
    io.dump(identity_functor(d.tensor), tu / "f_identity.json")

    bad = root / "corrupt"
    bad.mkdir(exist_ok=True)
    io.dump(inject_m3(dual2()), bad / "dual2_m3.json")
    doc = json.loads(io.serialize(dual2()))
    doc["payload"]["colour"] = "red"
    (bad / "unknown_key.json").write_text(json.dumps(doc, indent=1) + "\n")
    (bad / "truncated.json").write_text(io.serialize(dual2())[:200])
    doc = json.loads(io.serialize(dual2()))
    doc["payload"]["m"][0][4] = "2/4"
    (bad / "noncanonical_scalar.json").write_text(json.dumps(doc, indent=1) + "\n")
    print(f"fixtures written to {root}")


if __name__ == "__main__":
    main()
