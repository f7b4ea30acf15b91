"""Smoke test for the `lpmln` extension module."""

import lpmln

F = "0 : not a.\n2 : b <- a.\n3 : a <- not not a."
G = "2 : not a | b.\n1 : a | not a."
F_PRIME = "0 : not a.\n2 : b <- a.\n3 : a <- a."


def main():
    f, g, fp = lpmln.Program(F), lpmln.Program(G), lpmln.Program(F_PRIME)
    assert f.atoms == ["a", "b"] and len(f) == 3

    ex1 = lpmln.Program("2 : a | b.\n1 : <- a & b.")
    probs = {tuple(m): p for m, _, p in ex1.probabilities()}
    assert abs(sum(probs.values()) - 1.0) < 1e-9
    assert ex1.weight(["a"]) == "e^3"
    assert not ex1.is_soft_stable_model(["a", "b"])
    assert (["a"], ["a", "b"]) not in f.ht_models()

    v = lpmln.check_strong(f, g, trials=50, seed=1)
    assert v["result"] and v["c"] == "e^2" and v["falsifier"] is None, v

    v = lpmln.check_strong(fp, g)
    assert not v["result"] and v["witness"]["x"] == ["a", "b"], v

    ex1_g = lpmln.Program("1 : a <- not b.\n1 : b <- not a.\n1 : <- a & b.")
    assert lpmln.check_weak(ex1, ex1_g)["result"]
    assert not lpmln.check_structural(ex1, ex1_g, method="ht")["result"]

    docs = lpmln.emit_asp(f, g)
    assert set(docs) == {"P", "Pstar_soft", "Pstar_hard", "P1ss", "P2ss"}
    assert docs["P"].startswith("%") and "f_pw_s" in docs["P"]

    try:
        lpmln.Program("1 : a &.")
    except ValueError as e:
        assert "syntax error" in str(e)
    else:
        raise AssertionError("syntax error not raised")

    print("smoke test passed")


if __name__ == "__main__":
    main()
