import os

import wittlift


def test_witt_add_matches_integers_mod_p2():
    W = wittlift.WittRing(3, 2)
    assert W.add("(1,0)", "(1,0)") == "(2,1)"
    # W_2(F_3) = Z/9: 1 + 1 = 2 and the integer image agrees
    assert W.to_integer(W.add("(1,0)", "(1,0)")) == 2


def test_frobenius_after_verschiebung_is_p():
    W = wittlift.WittRing(2, 2)
    assert W.to_integer(W.frobenius(W.verschiebung("(1,0)"))) == 2


def test_flag_vanish_descending_weight():
    assert wittlift.flag_vanish([1, 0]) == "Vanishes"


def test_h0_small_flag():
    assert wittlift.h0([0, 3], 2) == 4
    assert wittlift.h0([0, 0, 0], 3) == 1


def test_qminus1_powers_of_p():
    assert [b for b in range(10) if wittlift.qminus1(b, 2) == 1] == [0, 1, 3, 7]


def test_run_closure_and_errors():
    code, rep = wittlift.run("closure", group="trivial", p=2, action="sigma")
    assert code == 0 and rep["result"]["order"] == "2"
    code, rep = wittlift.run("witt", op="add", p=4, r=2, args=["(1,0)", "(1,0)"])
    assert code == 1 and rep["error"]["kind"] == "precondition"


def test_errors_raise():
    try:
        wittlift.h0([0, 1, 2, 3], 2)
    except wittlift.WittliftError as e:
        assert "unsupported" in str(e)
    else:
        raise AssertionError("expected an error")


def test_imported_module_location():
    tree = os.environ.get("WITTLIFT_BUILD_TREE")
    if tree:
        assert wittlift._core.__file__.startswith(tree)
