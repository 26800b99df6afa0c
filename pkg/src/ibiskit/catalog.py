"""Built-in group catalog, group files and certificate files.

Each catalog entry is a directory holding ``generators.grp`` (group file
format) and ``meta`` with three ``key value`` lines: ``order``,
``transitivity`` and ``provenance``.  The declared order and transitivity
are checked every time an entry is loaded, so a mistyped generator is caught
instead of silently producing a different group.

Set ``IBISKIT_CATALOG_DIR`` to read entries from another directory.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from importlib.resources import files
from pathlib import Path

from .chain import stabilize_point
from .group import GeneratedGroup, GroupFileError, format_group_text, parse_group_text
from .ibis import SCHEMA, IbisCertificate
from .rng import SplitMix64

__all__ = [
    "CatalogEntry",
    "CatalogError",
    "CatalogCorruption",
    "CertificateSchemaError",
    "catalog_dir",
    "catalog_names",
    "read_entry",
    "load_catalog",
    "load_group_file",
    "save_group_file",
    "save_certificate",
    "load_certificate",
    "certificate_json",
]

ENV_VAR = "IBISKIT_CATALOG_DIR"


class CatalogError(LookupError):
    pass


class CatalogCorruption(RuntimeError):
    """A catalog entry failed its load-time self-check."""


class CertificateSchemaError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    degree: int
    generator_text: str
    order: int
    transitivity: int
    provenance: str


def catalog_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(str(files("ibiskit") / "catalog_data"))


def catalog_names() -> list[str]:
    root = catalog_dir()
    if not root.is_dir():
        return []
    return sorted(p.name for p in root.iterdir() if (p / "generators.grp").is_file())


def _parse_meta(text: str, name: str) -> dict[str, str]:
    meta = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition(" ")
        meta[key] = value.strip()
    for key in ("order", "transitivity", "provenance"):
        if key not in meta:
            raise CatalogCorruption(f"{name}: meta lacks {key!r}")
    return meta


def read_entry(name: str, root: Path | None = None) -> CatalogEntry:
    """Raw entry data, not yet validated."""
    root = catalog_dir() if root is None else root
    d = root / name
    if not (d / "generators.grp").is_file():
        raise CatalogError(f"unknown catalog group {name!r}; known: {', '.join(catalog_names()) or 'none'}")
    text = (d / "generators.grp").read_text()
    meta = _parse_meta((d / "meta").read_text() if (d / "meta").is_file() else "", name)
    try:
        order, k = int(meta["order"]), int(meta["transitivity"])
    except ValueError as e:
        raise CatalogCorruption(f"{name}: malformed meta value ({e})") from e
    try:
        degree = parse_group_text(text).degree
    except (GroupFileError, ValueError) as e:
        raise CatalogCorruption(f"{name}: {e}") from e
    return CatalogEntry(name, degree, text, order, k, meta["provenance"])


def transitivity_holds(G: GeneratedGroup, k: int) -> bool:
    """Is G transitive on ordered k-tuples of distinct points?

    Checked along a chain of point stabilizers: G is k-transitive exactly when
    the stabilizer of points 1..i is transitive on the remaining n-i points
    for every i < k.
    """
    n = G.degree
    if k > n:
        return False
    chain = G.chain
    rng = SplitMix64(0)
    for i in range(k):
        chain, m = stabilize_point(chain, i, rng)
        if m != n - i:
            return False
    return True


def _validate(entry: CatalogEntry) -> GeneratedGroup:
    try:
        G = parse_group_text(entry.generator_text)
    except (GroupFileError, ValueError) as e:
        raise CatalogCorruption(f"{entry.name}: {e}") from e
    G.name = entry.name
    if G.order() != entry.order:
        raise CatalogCorruption(f"{entry.name}: computed order {G.order()} != declared {entry.order}")
    if not transitivity_holds(G, entry.transitivity):
        raise CatalogCorruption(f"{entry.name}: not {entry.transitivity}-transitive as declared")
    return G


@lru_cache(maxsize=None)
def _load_cached(root: str, name: str) -> GeneratedGroup:
    return _validate(read_entry(name, Path(root)))


def load_catalog(name: str) -> GeneratedGroup:
    """Validated catalog group; raises CatalogError or CatalogCorruption."""
    return _load_cached(str(catalog_dir()), name)


def load_group_file(path: str | os.PathLike) -> GeneratedGroup:
    G = parse_group_text(Path(path).read_text())
    G.name = str(path)
    return G


def save_group_file(G: GeneratedGroup, path: str | os.PathLike, comments=()) -> None:
    Path(path).write_text(format_group_text(G, comments))


def certificate_json(cert: IbisCertificate) -> str:
    return json.dumps(cert.to_dict(), indent=2) + "\n"


def save_certificate(cert: IbisCertificate, path: str | os.PathLike) -> None:
    Path(path).write_text(certificate_json(cert))


def load_certificate(path: str | os.PathLike) -> IbisCertificate:
    data = json.loads(Path(path).read_text())
    schema = data.get("schema") if isinstance(data, dict) else None
    if schema != SCHEMA:
        raise CertificateSchemaError(f"unsupported certificate schema {schema!r}; this version reads {SCHEMA!r}")
    try:
        return IbisCertificate.from_dict(data)
    except (KeyError, ValueError) as e:
        raise CertificateSchemaError(f"malformed certificate: {e}") from e
