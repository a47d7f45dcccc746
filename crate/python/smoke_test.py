"""Smoke test for the nullgrid extension module.

Build and install first:
    pip install --no-build-isolation ./crates/py
"""

import json
import os
import tempfile

import nullgrid as ng


def main():
    f = ng.Polynomial("2*x1^2*x2 + x1")
    out = ng.divide(f, [ng.Polynomial("x1*x2"), ng.Polynomial("x1^2", nvars=2)])
    assert len(out["steps"]) == 1, out
    assert out["steps"][0] == ("2", [1, 0], 0), out["steps"]
    assert str(out["remainder"]) == "x1"
    q1, q2 = out["quotients"]
    assert q1 * ng.Polynomial("x1*x2") + out["remainder"] == f

    p = ng.Polynomial(str(f))
    assert p == f and p.terms() == [([2, 1], "2"), ([1, 0], "1")]

    assert ng.max_null_index([1, 3, 4, 5, 9], field="gfp:11") == 4
    assert ng.is_lacunary(ng.Polynomial("x1^5 - 1"), [4])

    roots = ng.Grid([[1, 3, 4, 5, 9], [1, 3, 4, 5, 9]], field="gfp:11")
    g = ng.Polynomial("x1^2*x2^3 + x1^6*x2^6", field="gfp:11")
    cert = ng.check("cnv", g, [2, 3], roots, lam=[4, 4], witness=True)
    assert cert.accepted and cert.witness == ["1", "1"], cert.to_json()
    assert cert.revalidate(g)
    assert ng.Certificate.from_json(cert.to_json()).revalidate(g)
    assert not ng.check("cnv", g, [2, 3], roots, lam=[4, 4], mode="schauz").accepted
    try:
        ng.check("cnv", g, [1, 1], roots, lam=[4, 4])
        raise AssertionError("expected a precondition error")
    except ng.NullgridError as e:
        assert "alpha-not-in-support" in str(e)

    basis = ng.vanishing_basis(roots, kind="power", t=2)
    assert ng.is_groebner_basis(basis)
    assert len(ng.groebner_complete([ng.Polynomial("x1^2 - x2"), ng.Polynomial("x1*x2 - 1")])) == 3

    punctured = ng.Grid([[0, 1, 2, 3, 4], [0, 1, 2, 3, 4]], [[0, 1], [0]])
    h = ng.Polynomial("x1*x2")
    exact = ng.count_nonzeros(punctured, h)
    assert exact == ng.clark_count(punctured, h) == 16
    bounds = ng.punctured_bounds(punctured, h)
    assert bounds["bound_a"] == 13 and bounds["bound_b"] == 14
    sharp, expected = ng.sharpness(punctured, [1, 1])
    assert ng.count_nonzeros(punctured, sharp) == expected

    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as tmp:
        tmp.write(punctured.to_json())
    try:
        assert ng.Grid.load(tmp.name).kind == "punctured"
    finally:
        os.unlink(tmp.name)

    multi = ng.Grid.multigrid([[[0, 2], [1, 1]]])
    assert len(multi) == 2 and json.loads(multi.to_json())["S"]

    for _, passed, line in ng.selftest(only=[1, 6]):
        print(line)
        assert passed
    print("smoke test passed")


if __name__ == "__main__":
    main()
