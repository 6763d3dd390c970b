"""Test-local oracles and table comparison utilities.

The brute-force functions reimplement the scoring rules and the
enumeration from first principles (dicts, itertools, explicit loops) so
that expected values in the tests do not depend on the code paths they
check.  Only the lexicon data structures are borrowed, as plain
containers.
"""

from __future__ import annotations

import itertools

TOL = 1e-9


# -- independent scoring -------------------------------------------------


def bf_feature(a1, k1, v1, a2, k2, v2):
    if a1 != a2:
        return 0.0
    if k1 == "int" and k2 == "int":
        return 1.0 if v1 == v2 else -1.0
    return v1 * v2


def fs_dict(feature_set):
    return {f.attribute: (f.value.kind, f.value.magnitude) for f in feature_set}


def bf_structure(intrinsic: dict, selectional: dict) -> float:
    total = 0.0
    for a2, (k2, v2) in selectional.items():
        for a1, (k1, v1) in intrinsic.items():
            total += bf_feature(a1, k1, v1, a2, k2, v2)
    return total / len(selectional)


def bf_assignments(lexicon, ids, pred_index, gamma, threshold, strict):
    """All scored assignments of the predicate at 0-based ``pred_index``:
    list of (fills dict case->0-based index, score)."""
    entry = lexicon.lookup(ids[pred_index])
    slots = entry.case_structure
    others = [i for i in range(len(ids)) if i != pred_index]
    per_slot = []
    for slot in slots:
        passing = []
        for i in others:
            raw = bf_structure(
                fs_dict(lexicon.lookup(ids[i]).intrinsic), fs_dict(slot.selectional)
            )
            if raw >= threshold:
                passing.append((i, raw))
        per_slot.append(passing)

    if strict:
        patterns = [tuple(range(len(slots)))]
    else:
        patterns = [
            combo
            for r in range(len(slots) + 1)
            for combo in itertools.combinations(range(len(slots)), r)
        ]
    results = []
    for pattern in patterns:
        for chosen in itertools.product(*(per_slot[j] for j in pattern)):
            indexes = [i for i, _ in chosen]
            if len(set(indexes)) != len(indexes):
                continue
            score = sum(gamma ** abs(pred_index - i) * raw for i, raw in chosen)
            fills = {slots[j].case_type: i for j, (i, _) in zip(pattern, chosen)}
            results.append((fills, score))
    if not results:
        results.append(({}, 0.0))
    return results


def bf_interpretations(lexicon, ids, gamma, threshold, strict):
    """Every interpretation as ({pred_index: fills dict}, score), unordered."""
    pred_indexes = [i for i, icon in enumerate(ids) if lexicon.lookup(icon).predicative]
    per_pred = [
        bf_assignments(lexicon, ids, i, gamma, threshold, strict) for i in pred_indexes
    ]
    if not pred_indexes:
        return [({}, 0.0)]
    out = []
    for combo in itertools.product(*per_pred):
        score = sum(s for _, s in combo)
        out.append(({pred_indexes[j]: fills for j, (fills, _) in enumerate(combo)}, score))
    return out


def bf_best_score(lexicon, ids, gamma, threshold, strict=False):
    return max(score for _, score in bf_interpretations(lexicon, ids, gamma, threshold, strict))


# -- table comparison ----------------------------------------------------


def tables_by_position(parser):
    """Instance-id-free view of all three tables, for comparing parsers
    that assigned different instance ids to the same sequence."""
    pos = {inst.instance_id: inst.position for inst in parser.sequence}
    compat = {
        (pos[pred], case, pos[cand]): value
        for (pred, case, cand), value in parser.compatibility_table.items()
    }
    assignments = {
        pos[pid]: [
            (tuple((case, pos[cand]) for case, cand in a.fills), a.score) for a in rows
        ]
        for pid, rows in parser.assignments_table.items()
    }
    interpretations = [
        (
            tuple(
                (pos[pid], tuple((case, pos[cand]) for case, cand in a.fills))
                for pid, a in interp.choices
            ),
            interp.score,
        )
        for interp in parser.interpretations_table
    ]
    sequence = tuple(inst.lexicon_id for inst in parser.sequence)
    return sequence, compat, assignments, interpretations


def assert_tables_equal(actual, expected, tol=TOL):
    seq_a, compat_a, asg_a, interp_a = tables_by_position(actual)
    seq_b, compat_b, asg_b, interp_b = tables_by_position(expected)
    assert seq_a == seq_b
    assert compat_a.keys() == compat_b.keys()
    for key in compat_a:
        assert abs(compat_a[key] - compat_b[key]) <= tol, key
    assert asg_a.keys() == asg_b.keys()
    for pred in asg_a:
        rows_a, rows_b = asg_a[pred], asg_b[pred]
        assert len(rows_a) == len(rows_b), pred
        for (fills_a, score_a), (fills_b, score_b) in zip(rows_a, rows_b):
            assert fills_a == fills_b, pred
            assert abs(score_a - score_b) <= tol, pred
    assert len(interp_a) == len(interp_b)
    for (choices_a, score_a), (choices_b, score_b) in zip(interp_a, interp_b):
        assert choices_a == choices_b
        assert abs(score_a - score_b) <= tol
