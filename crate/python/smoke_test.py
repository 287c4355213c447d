"""Smoke test for the superspectral extension module."""

import json
import math

import superspectral as ss


def main():
    x1 = ss.Grassmann.generator(1)
    x2 = ss.Grassmann.generator(2)
    assert (x1 * x2) == ss.Grassmann("0") - (x2 * x1)
    assert (x1 * x1).is_zero()
    assert x1.parity() == "odd" and (x1 * x2).parity() == "even"
    a = ss.Grassmann("x1^x2")
    assert a.star() == ss.Grassmann("x2^x1")
    u = ss.Grassmann("1 + x1^x2")
    assert u.body() == 1
    e = ss.Grassmann("x1^x2").exp()
    assert e == u
    ok, log = u.unitary_log()
    print("grassmann:", u, "unitary:", ok, "log:", log)

    m = ss.PointMetric.two_point(2.0 + 0j)
    d, cert = m.distance(0, 1)
    assert math.isclose(d, 0.5, rel_tol=1e-9), d
    assert math.isclose(m.distance_by_paths(0, 1), d, rel_tol=1e-9)
    assert math.isclose(m.commutator_norm(cert), 1.0, rel_tol=1e-6)
    print("two-point distance:", d)

    assert ss.fluctuate(4)["status"] == "obstruction"
    f6 = ss.fluctuate(6)
    assert f6["status"] == "fluctuation" and len(f6["a_m"]) == 3
    print("ko6 A_0 =", f6["a_m"][0])

    sp = ss.action("spectral")
    print("spectral action terms:", sp["n_terms"])

    report = json.loads(ss.verify(only="grassmann"))
    assert report["checks"], "no checks selected"
    assert all(c["status"] == "pass" for c in report["checks"])
    print("verify grassmann checks:", len(report["checks"]))
    print("ok")


if __name__ == "__main__":
    main()
