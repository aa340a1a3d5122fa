"""Regenerate src/hexad/data/catalog from the explicit tables below.

Run from the repository root: ``python3 scripts/build_catalog.py``.
Free-nilpotent algebras and table quotients are computed; explicit algebras,
witness maps and expected values are written out literally.
"""

import json
import shutil
from pathlib import Path

from hexad.freenil import (free_nilpotent, heisenberg_presentation, ideal_from_pairs,
                           partition_search, presentation_to_grading)
from hexad.grading import HexGrading, grading_to_derivation
from hexad.lie import LieAlgebra, abelian, heisenberg
from hexad.engel import valid_pair_choice
from hexad.linalg import Matrix, Subspace

ROOT = Path(__file__).resolve().parents[1] / "src" / "hexad" / "data" / "catalog"


def explicit(name, dim, brackets, field_order=6):
    """brackets: {(i, j): {k: scalar}} with 1-based indices."""
    br = {(i - 1, j - 1): {k - 1: v for k, v in out.items()} for (i, j), out in brackets.items()}
    return LieAlgebra(name, dim, field_order, br)


def diag_map(values, order=None, kind="derivation", field_order=6, note=""):
    d = len(values)
    m = [["0"] * d for _ in range(d)]
    for i, v in enumerate(values):
        m[i][i] = v
    out = {"kind": kind, "field_order": field_order, "matrix": m}
    if order is not None:
        out["order"] = order
    if note:
        out["note"] = note
    return out


def grading_witness(h: HexGrading):
    return h.to_json()


def write_entry(name, algebra, description, expected, witnesses):
    d = ROOT / name
    (d / "witnesses").mkdir(parents=True)
    data = algebra.to_json()
    data["name"] = name
    data["description"] = description
    (d / "algebra.json").write_text(json.dumps(data, indent=1) + "\n")
    (d / "expected.json").write_text(json.dumps(expected, indent=1) + "\n")
    for wname, w in witnesses.items():
        (d / "witnesses" / f"{wname}.json").write_text(json.dumps(w, indent=1) + "\n")
    return name


def labelled_grading(g, exponents):
    return grading_witness(HexGrading.from_labels(g, exponents))


def main():
    if ROOT.exists():
        shutil.rmtree(ROOT)
    ROOT.mkdir(parents=True)
    names = []

    # abelian
    for n in (2, 4):
        g = abelian(n, name=f"abelian_C{n}")
        names.append(write_entry(
            g.name, g, f"abelian Lie algebra of dimension {n}",
            {"dim": n, "class": 1, "periodic_derivation_order": 6, "prederivation_space_dim": n * n},
            {"periodic_derivation": diag_map(["z"] * n, 6),
             "hex_grading": labelled_grading(g, [1] * n)}))

    # Heisenberg
    for m in (1, 2, 3):
        g = heisenberg(m)
        g = LieAlgebra(f"heisenberg_{m}", g.dim, 6, g.brackets)
        vals = ["1"] * m + ["w"] * m + ["1+w"]
        wit = {"periodic_derivation": diag_map(vals, 6),
               "hex_grading": labelled_grading(g, [0] * m + [2] * m + [1]),
               "presentation": heisenberg_presentation(m).to_json()}
        if m == 1:
            wit["periodic_derivation_integral"] = {
                "kind": "derivation", "field_order": 6, "order": 6,
                "matrix": [["1", "-1", "0"], ["1", "0", "0"], ["0", "0", "1"]]}
        names.append(write_entry(
            g.name, g, f"Heisenberg algebra h_{m}: [x_i, y_i] = z",
            {"dim": 2 * m + 1, "class": 2, "periodic_derivation_order": 6,
             "prederivation_space_dim": (2 * m + 1) ** 2},
            wit))

    # N(2, g)
    for gens in (2, 3, 4, 5):
        F = free_nilpotent(2, gens, f"N2{gens}")
        exp = {"dim": F.dim, "class": 2, "generator_count": gens,
               "prederivation_space_dim": F.dim ** 2}
        wit = {}
        if gens == 2:
            exp["periodic_derivation_order"] = 6
            exp["table_row"] = {"r": 0, "g": 2, "dim": 3}
            exp["partition_search"] = "found"
            wit["periodic_derivation"] = diag_map(["1", "w", "1+w"], 6)
        elif gens == 3:
            exp["periodic_derivation_order"] = 6
            exp["table_row"] = {"r": 0, "g": 3, "dim": 6}
            exp["partition_search"] = "found"
            wit["periodic_derivation"] = diag_map(
                ["1", "w", "w^2", "1+w", "1+w^2", "w+w^2"], 6)
        else:
            exp["periodic_derivation"] = "none"
            exp["partition_search"] = "absent"
            wit["obstruction"] = {
                "kind": "derivation", "status": "UNSAT",
                "vars": ["a1", "a2", "a3", "a4"],
                "forms": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1],
                          [1, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 1],
                          [0, 1, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1]]}
        if gens <= 3:
            res = partition_search(F, Subspace.zero(F.dim, 6))
            wit["hex_grading"] = grading_witness(res.grading)
            wit["presentation"] = res.presentation.to_json()
            wit["ideal"] = {"class": 2, "generators": gens, "pairs": []}
        else:
            wit["ideal"] = {"class": 2, "generators": gens, "pairs": []}
        names.append(write_entry(F.name, F, f"free 2-step nilpotent algebra on {gens} generators", exp, wit))

    # higher class free-nilpotent
    N32 = free_nilpotent(3, 2, "N32")
    names.append(write_entry(
        "N32", N32, "free nilpotent algebra of class 3 on 2 generators",
        {"dim": 5, "class": 3, "generator_count": 2, "periodic_prederivation_order": 6,
         "pre_engel_4": True},
        {"periodic_prederivation": diag_map(["z", "-z", "1", "z", "-z"], 6, "prederivation",
                                            note="diag(a,-a,1,a,-a) with a = z")}))
    N33 = free_nilpotent(3, 3, "N33")
    names.append(write_entry(
        "N33", N33, "free nilpotent algebra of class 3 on 3 generators",
        {"dim": 14, "class": 3, "generator_count": 3, "periodic_prederivation": "none",
         "property_f": "theorem", "standard_basis_pair_choice": "none",
         "engel_4": True},
        {}))
    N42 = free_nilpotent(4, 2, "N42")
    names.append(write_entry(
        "N42", N42, "free nilpotent algebra of class 4 on 2 generators",
        {"dim": 8, "class": 4, "generator_count": 2, "periodic_prederivation": "none",
         "property_f": "theorem", "standard_basis_pair_choice": "none", "engel_4": True},
        {}))
    N52 = free_nilpotent(5, 2, "N52")
    names.append(write_entry(
        "N52", N52, "free nilpotent algebra of class 5 on 2 generators",
        {"dim": 14, "class": 5, "generator_count": 2, "periodic_prederivation": "none",
         "pre_engel_4_standard_basis": False, "engel_4": False},
        {}))

    # table quotients
    table = [
        ("N23_mod_x2x3", 3, [(2, 3)], 1, 5),
        ("N24_mod_x1x2", 4, [(1, 2)], 1, 9),
        ("N23_mod_x1x2_x1x3", 3, [(1, 2), (1, 3)], 2, 4),
        ("N24_mod_x1x2_x3x4", 4, [(1, 2), (3, 4)], 2, 8),
        ("N24_mod_x2x4_x3x4", 4, [(2, 4), (3, 4)], 2, 8),
        ("N25_mod_x1x2_x3x4", 5, [(1, 2), (3, 4)], 2, 13),
    ]
    for name, gens, pairs, r, dim in table:
        F = free_nilpotent(2, gens)
        I = ideal_from_pairs(F, pairs)
        res = partition_search(F, I)
        assert res.found, name
        Q, h, _ = presentation_to_grading(res.presentation, name)
        rel = ", ".join(f"[x{i},x{j}]" for i, j in pairs)
        gd = grading_to_derivation(h)
        wit = {"ideal": {"class": 2, "generators": gens, "pairs": [list(p) for p in pairs]},
               "presentation": res.presentation.to_json(),
               "hex_grading": grading_witness(h),
               "periodic_derivation": {"kind": "derivation", "field_order": gd.map.n,
                                       "order": gd.order, "matrix": gd.map.matrix.to_strings()}}
        names.append(write_entry(
            name, Q, f"N(2,{gens}) modulo the ideal spanned by {rel}",
            {"dim": dim, "class": 2, "generator_count": gens, "periodic_derivation_order": 6,
             "table_row": {"r": r, "g": gens, "dim": dim}, "partition_search": "found"},
            wit))

    # Gauger's I5 quotient, stated directly
    I5 = explicit("N24_mod_I5", 7, {(1, 2): {5: 1}, (1, 3): {6: 1}, (2, 3): {7: 1}, (3, 4): {5: -1}})
    names.append(write_entry(
        "N24_mod_I5", I5,
        "N(2,4)/I5 with [x1,x2]=x5, [x1,x3]=x6, [x2,x3]=x7, [x3,x4]=-x5; "
        "N(2,4)/I6 degenerates to it while admitting a periodic derivation",
        {"dim": 7, "class": 2, "generator_count": 4, "periodic_derivation": "none",
         "obstruction": "UNSAT", "partition_search": "absent"},
        {"obstruction": {
            "kind": "derivation", "status": "UNSAT", "vars": ["a", "b", "g"],
            "forms_text": ["a", "b", "g", "b-a", "a+g", "b-g", "a+b-g"],
            "forms": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, 1, 0], [1, 0, 1], [0, 1, -1], [1, 1, -1]],
            "positions": [2, 5, 0, 3, 1, 4, 6]},
         "ideal": {"class": 2, "generators": 4, "pairs": [[1, 4], [2, 4]],
                   "sums": [[[1, 2], [3, 4]]]}}))

    # filiform, dimension 5
    g1 = explicit("filiform_g1", 5, {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}})
    names.append(write_entry(
        "filiform_g1", g1, "filiform algebra [x1,xi]=x(i+1) for i=2,3,4",
        {"dim": 5, "class": 4, "periodic_prederivation_order": 6, "pre_engel_4": True,
         "prederivation_orders": {"2": 2, "4": 4, "6": 6}},
        {"periodic_prederivation": diag_map(["z", "-z", "-z", "z", "z"], 6, "prederivation",
                                            note="diag(a,-a,-a,a,a) with a = z")}))
    g2 = explicit("filiform_g2", 5, {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (2, 3): {5: 1}})
    names.append(write_entry(
        "filiform_g2", g2, "filiform algebra g1 plus [x2,x3]=x5",
        {"dim": 5, "class": 4, "periodic_prederivation": "none", "obstruction": "UNSAT",
         "listed_forms": ["a", "b", "2b-a", "2a-b", "a+2b"],
         "listed_forms_family": False},
        {"obstruction": {
            "kind": "prederivation", "status": "UNSAT", "vars": ["a", "b"],
            "forms_text": ["a", "b", "2b-a", "2a+b", "a+2b"],
            "forms": [[1, 0], [0, 1], [-1, 2], [2, 1], [1, 2]],
            "positions": [0, 1, 2, 3, 4]},
         "obstruction_listed": {
            "kind": "prederivation", "status": "UNSAT", "vars": ["a", "b"],
            "forms_text": ["a", "b", "2b-a", "2a-b", "a+2b"],
            "forms": [[1, 0], [0, 1], [-1, 2], [2, -1], [1, 2]]}}))

    # model filiform algebras of dimension 7..9
    for n in (7, 8, 9):
        L = explicit(f"filiform_L{n}", n, {(1, i): {i + 1: 1} for i in range(2, n)})
        names.append(write_entry(
            L.name, L, f"model filiform algebra of dimension {n}",
            {"dim": n, "class": n - 1, "periodic_prederivation": "none",
             "first_coordinate_vanishes": True, "e4_span_bound": n - 1,
             "pre_engel_4_standard_basis": False},
            {}))

    # decomposable C^2 over Q(zeta_12)
    C2 = abelian(2, 12, "decomposable_C2_zeta12")
    names.append(write_entry(
        C2.name, C2, "C^2 with the order-12 map diag(z, z^2), z a primitive 12th root",
        {"dim": 2, "class": 1, "periodic_derivation_order": 12, "scalar_multiples_of_order_6": 0},
        {"periodic_derivation": diag_map(["z", "z^2"], 12, field_order=12)}))

    sl2 = explicit("sl2_adnilpotent_demo", 3, {(1, 2): {3: 1}, (1, 3): {1: -2}, (2, 3): {2: 2}})
    names.append(write_entry(
        sl2.name, sl2, "sl2 with basis E, F, H; the basis E, F, H+E-F consists of ad-nilpotent elements",
        {"dim": 3, "class": None, "pre_engel_2": False, "pre_engel_3": True},
        {"pre_engel_basis": {"m": 3, "holds": True,
                             "basis": [["1", "0", "1"], ["0", "1", "-1"], ["0", "0", "1"]]}}))

    class5 = explicit("example_513", 8, {
        (1, 2): {3: 1}, (1, 3): {4: 1}, (2, 3): {5: 1}, (2, 4): {6: 1},
        (1, 5): {6: 1}, (2, 5): {7: 1}, (1, 7): {8: 1}, (2, 6): {8: 1}})
    names.append(write_entry(
        class5.name, class5, "8-dimensional class-5 algebra with periodic prederivations of every even order",
        {"dim": 8, "class": 5, "pre_engel_4": True, "engel_4": False,
         "engel_4_violator": [1, 1, 0, 0, 0, 0, 0, 0], "e4_span_bound": 8,
         "periodic_prederivation_order": 2,
         "listed_property_f_pairs": [[1, 2], [1, 3], [2, 3], [1, 4], [2, 4], [3, 4],
                                     [5, 6], [5, 7], [5, 8], [6, 7], [6, 8], [7, 8]],
         "listed_pairs_falsify": False},
        {"periodic_prederivation": diag_map(["-1", "1", "-1", "-1", "1", "-1", "1", "1"], 2,
                                            "prederivation",
                                            note="diag(a,-a,a,a,-a,a,-a,-a) with a = -1"),
         "prederivation_family": {
             "kind": "prederivation", "vars": ["a", "b", "g"],
             "forms_text": ["a", "b", "g", "2a+b", "a+2b", "a+b+g", "2b+g", "2a+3b"],
             "forms": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [2, 1, 0], [1, 2, 0], [1, 1, 1],
                       [0, 2, 1], [2, 3, 0]]},
         "pre_engel_basis": {"m": 4, "holds": True, "basis": Matrix.identity(8).to_strings()},
         "property_f_witness": valid_pair_choice(class5, Matrix.identity(8)).to_json()}))

    (ROOT / "index.json").write_text(json.dumps(names, indent=1) + "\n")
    print(f"wrote {len(names)} entries to {ROOT}")


if __name__ == "__main__":
    main()
