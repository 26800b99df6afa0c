import json
import re
import shutil

import numpy as np
import pytest

from conftest import closure, fixing
from ibiskit.catalog import (
    CatalogCorruption,
    CatalogError,
    CertificateSchemaError,
    catalog_dir,
    catalog_names,
    certificate_json,
    load_catalog,
    load_certificate,
    load_group_file,
    read_entry,
    save_certificate,
    save_group_file,
    transitivity_holds,
)
from ibiskit.actions import subset_action
from ibiskit.group import GroupFileError
from ibiskit.ibis import IbisCertificate, is_ibis
from ibiskit.techniques import t1_certificate


def tuple_orbit_size(G, k):
    """Size of the orbit of (1..k) on ordered k-tuples, by vectorized BFS."""
    n = G.degree
    gens = [np.array(g._img, dtype=np.int64) for g in G.generators]
    weights = n ** np.arange(k - 1, -1, -1, dtype=np.int64)
    seen = np.zeros(n**k, dtype=bool)
    start = np.arange(k, dtype=np.int64) @ weights
    seen[start] = True
    frontier = np.array([start])
    total = 1
    while frontier.size:
        digits = (frontier[:, None] // weights) % n
        fresh = []
        for g in gens:
            codes = g[digits] @ weights
            codes = np.unique(codes[~seen[codes]])
            seen[codes] = True
            fresh.append(codes)
        frontier = np.unique(np.concatenate(fresh))
        total += frontier.size
    return total


def test_every_entry_loads_and_validates():
    names = catalog_names()
    for required in ["M11", "M12", "M22", "M23", "M24", "S5", "A6", "GL3_2"]:
        assert required in names
    for name in names:
        entry = read_entry(name)
        G = load_catalog(name)
        assert G.order() == entry.order and G.degree == entry.degree
        assert transitivity_holds(G, entry.transitivity)
        assert not transitivity_holds(G, entry.transitivity + 1) or entry.transitivity == G.degree
        assert entry.provenance


@pytest.mark.parametrize("name, order", [("M11", 7920), ("M12", 95040), ("M22", 443520), ("M23", 10200960),
                                         ("M24", 244823040), ("S5", 120), ("A6", 360), ("GL3_2", 168)])
def test_declared_orders(name, order):
    assert load_catalog(name).order() == order


def test_m11_sharply_4_transitive_by_brute_force():
    G = load_catalog("M11")
    assert tuple_orbit_size(G, 4) == 11 * 10 * 9 * 8 == 7920
    elems = closure(G)
    assert len(elems) == 7920
    assert fixing(elems, [0, 1, 2, 3]) == [tuple(range(11))]


def test_m12_sharply_5_transitive_by_brute_force():
    G = load_catalog("M12")
    assert tuple_orbit_size(G, 5) == 12 * 11 * 10 * 9 * 8 == 95040
    assert len(closure(G)) == 95040


def test_m24_order_from_5_tuples_and_stabilizer():
    G = load_catalog("M24")
    assert tuple_orbit_size(G, 5) == 24 * 23 * 22 * 21 * 20 == 5_100_480
    S = G.tuple_stabilizer([1, 2, 3, 4, 5])
    elems = closure(S)
    assert len(elems) == 48
    assert all(g[i] == i for g in elems for i in range(5))
    assert 5_100_480 * 48 == G.order() == 244823040


def test_gl32_is_linear_on_its_labelling():
    G = load_catalog("GL3_2")
    text = (catalog_dir() / "GL3_2" / "generators.grp").read_text()
    vec = {}
    for m in re.finditer(r"# point (\d+) <-> vector \((\d), (\d), (\d)\)", text):
        vec[int(m[1])] = tuple(int(b) for b in m.groups()[1:])
    assert len(vec) == 7
    point_of = {v: p for p, v in vec.items()}

    def add(u, v):
        return tuple((a + b) % 2 for a, b in zip(u, v))

    elems = closure(G)
    assert len(elems) == 168
    for g in elems:
        for p in range(1, 8):
            for q in range(p + 1, 8):
                r = point_of[add(vec[p], vec[q])]
                assert vec[g[r - 1] + 1] == add(vec[g[p - 1] + 1], vec[g[q - 1] + 1])


def _copy_catalog(tmp_path, monkeypatch):
    root = tmp_path / "catalog"
    shutil.copytree(catalog_dir(), root)
    monkeypatch.setenv("IBISKIT_CATALOG_DIR", str(root))
    return root


def test_env_override_and_corruption(tmp_path, monkeypatch):
    root = _copy_catalog(tmp_path, monkeypatch)
    grp = root / "M11" / "generators.grp"
    # a plausible transcription slip: one 4-cycle written wrongly
    grp.write_text(grp.read_text().replace("(3 7 11 8)", "(3 7 8 11)"))
    with pytest.raises(CatalogCorruption):
        load_catalog("M11")
    meta = root / "S5" / "meta"
    meta.write_text(meta.read_text().replace("transitivity 5", "transitivity 5\n").replace("order 120", "order 60"))
    with pytest.raises(CatalogCorruption, match="order"):
        load_catalog("S5")
    meta = root / "D8" / "meta"
    meta.write_text(meta.read_text().replace("transitivity 1", "transitivity 2"))
    with pytest.raises(CatalogCorruption, match="transitive"):
        load_catalog("D8")
    (root / "A4" / "meta").write_text("order 12\n")
    with pytest.raises(CatalogCorruption, match="transitivity"):
        load_catalog("A4")
    assert load_catalog("S4").order() == 24


def test_unknown_name():
    with pytest.raises(CatalogError):
        load_catalog("M13")


def test_group_file_io(tmp_path):
    G = load_catalog("PSL2_7")
    path = tmp_path / "g.grp"
    save_group_file(G, path, ["PSL(2,7) on the projective line"])
    again = load_group_file(path)
    assert again.order() == 168
    assert [g.images for g in again.generators] == [g.images for g in G.generators]
    bad = tmp_path / "bad.grp"
    bad.write_text("degree 3\n(1 4)\n")
    with pytest.raises(GroupFileError) as ei:
        load_group_file(bad)
    assert ei.value.line == 2 and "4" in str(ei.value)
    empty = tmp_path / "empty.grp"
    empty.write_text("degree 5\n")
    assert load_group_file(empty).order() == 1


def test_certificate_round_trip_is_byte_exact(tmp_path):
    G = subset_action(load_catalog("S5"), 2).image()
    for cert in (is_ibis(G, descriptor="catalog:S5 subsets:2"), t1_certificate(G, seed=3),
                 is_ibis(load_catalog("M11"))):
        path = tmp_path / "c.json"
        save_certificate(cert, path)
        first = path.read_bytes()
        loaded = load_certificate(path)
        assert loaded == cert
        save_certificate(loaded, path)
        assert path.read_bytes() == first
        assert certificate_json(loaded).encode() == first


def test_certificate_schema_version(tmp_path):
    cert = is_ibis(load_catalog("S4"))
    d = cert.to_dict()
    d["schema"] = "ibiskit-certificate/2"
    path = tmp_path / "future.json"
    path.write_text(json.dumps(d))
    with pytest.raises(CertificateSchemaError, match="ibiskit-certificate/2"):
        load_certificate(path)
    path.write_text(json.dumps({"schema": "ibiskit-certificate/1", "group": "x"}))
    with pytest.raises(CertificateSchemaError, match="malformed"):
        load_certificate(path)
    assert isinstance(IbisCertificate.from_dict(cert.to_dict()), IbisCertificate)
