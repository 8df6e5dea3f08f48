"""Smoke test for the `selberg` extension module."""

import json

import selberg


def main():
    q = selberg.NumberField([0, 1])
    level = selberg.find_congruence_level(q, 3)
    assert (level.q, level.index_bound) == (3, 27), level
    assert not selberg.kionke_criterion(2, 1)

    s2 = selberg.NumberField.from_text("# sqrt 2\n-2, 0, 1\n")
    assert s2.field_disc == 8 and s2.degree == 2
    assert selberg.find_congruence_level(s2, 3).norm == 7

    k7 = selberg.NumberField.two_cos(7)
    assert k7.field_disc == 49
    assert k7.split(7) == ([(3, 1)], False)
    e = k7.embeddings()
    assert e == sorted(e) and len(e) == 3

    assert selberg.unconditional_index_bound(2, 3) == 729
    assert [selberg.max_torsion_order(n, 1).exact_max_order for n in range(1, 7)] == [2, 6, 6, 12, 12, 30]
    prof = selberg.max_torsion_order(6, 1)
    assert prof.witness_orders == [5, 6] and prof.stated_bound == 2 * 6**12

    rep = json.loads(selberg.grh_threshold(1, 0.0))
    assert 10**6 < int(rep["threshold_x"]) < 10**8

    cfg = selberg.Config(lemma_c=2.0)
    assert "lemma_C" not in cfg.defaulted
    a = selberg.volume_index_bound_grh(100.0, 3)
    b = selberg.volume_index_bound_grh(100.0, 3, cfg)
    assert abs(b - 2 * a) <= 1e-12 * b

    lc = selberg.construct(7)
    assert lc.t == (-1, 2) and lc.disc == 49
    assert all(ok for _, ok in lc.checks())
    again = selberg.LatticeConstruction.from_json(lc.to_json())
    assert again.reverify()

    rows = selberg.construct_sweep(31)
    assert rows[0][:2] == (5, 5) and min(r[3] for r in rows) >= 0.2

    try:
        selberg.NumberField([-1, 0, 1])
    except selberg.SelbergError:
        pass
    else:
        raise AssertionError("reducible polynomial accepted")
    try:
        selberg.construct(5, probe_k=21)
    except selberg.ResourceCapError:
        pass
    else:
        raise AssertionError("probe cap not enforced")

    print("smoke ok")


if __name__ == "__main__":
    main()
