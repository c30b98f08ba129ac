import pytest

import vostokov


def test_pinned_value():
    K = vostokov.Field(3, 1, 1)
    r = vostokov.symbol(K, ["z", "1-pi"])
    assert r["exponent"] == 2
    assert r["modulus"] == 3
    assert r["sign"] == vostokov.SIGN
    assert r["confirmed_plan"]["N"] > r["plan"]["N"]


def test_oracles_agree():
    K = vostokov.Field(3, 1, 1)
    assert vostokov.kummer(K, "z", "1-pi") == 2
    assert vostokov.symbol(K, ["1+pi", "z"])["exponent"] == vostokov.artin_hasse_zeta(K, "1+pi")


def test_two_dimensional():
    K = vostokov.Field(3, 1, 2)
    a = vostokov.symbol(K, ["t1", "t2", "z"])["exponent"]
    b = vostokov.symbol(K, ["t2", "t1", "z"])["exponent"]
    assert (a + b) % 3 == 0


def test_basis_and_decomposition():
    K = vostokov.Field(3, 1, 1)
    assert all(e["pass"] for e in vostokov.orthogonality(K))
    assert vostokov.decompose(K, "1+pi+pi^2")["certificate_holds"]


def test_suite():
    r = vostokov.verify("steinberg", trials=10, seed=7)
    assert r["passed"], r["failures"]
    assert "kernel" in vostokov.suites()


def test_errors():
    K = vostokov.Field(3, 1, 1)
    with pytest.raises(ValueError):
        vostokov.symbol(K, ["z", "1+"])
    with pytest.raises(ValueError):
        vostokov.Field(2)
    with pytest.raises(vostokov.PrecisionError):
        vostokov.symbol(vostokov.Field(3, precision=2), ["z", "1-pi"])
