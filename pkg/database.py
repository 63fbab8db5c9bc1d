import hashlib
import json
import logging
import os
import sqlite3
from fractions import Fraction
from pathlib import Path

from arith import QSeries, order_to_cutoff
from formalg import FormExpansion, evaluate, remember

log = logging.getLogger(__name__)

CACHE_DIR = Path(os.getenv("THETA2_CACHE", "data"))
DB_NAME = "expansions.db"
SOURCE_FILES = ("arith.py", "thetacore.py", "formalg.py", "registry.py")

EXPANSION_COLUMNS = ["id", "name", "order_n", "pi_power", "j", "k", "grp", "version", "payload",
                     "created", "term_count"]


def db_path(cache_dir=None):
    return Path(cache_dir or CACHE_DIR) / DB_NAME


def source_version():
    """Short hash of the modules whose output the cache stores."""
    digest = hashlib.sha256()
    here = Path(__file__).parent
    for name in SOURCE_FILES:
        path = here / name
        if path.exists():
            digest.update(path.read_bytes())
    return digest.hexdigest()[:16]


def init_db(cache_dir=None):
    """Creates the expansion cache table if needed and applies migrations."""
    path = db_path(cache_dir)
    path.parent.mkdir(parents=True, exist_ok=True)

    conn = sqlite3.connect(path)
    cursor = conn.cursor()

    cursor.execute("""
        CREATE TABLE IF NOT EXISTS expansions (
            id INTEGER PRIMARY KEY AUTOINCREMENT,
            name TEXT NOT NULL,
            order_n TEXT NOT NULL,
            pi_power INTEGER,
            j INTEGER,
            k TEXT,
            grp TEXT,
            version TEXT NOT NULL,
            payload TEXT,
            created TEXT DEFAULT CURRENT_TIMESTAMP,
            UNIQUE(name, order_n, version)
        )
    """)

    # Migrations for caches written before term counts were recorded
    try:
        cursor.execute("ALTER TABLE expansions ADD COLUMN term_count INTEGER DEFAULT 0")
    except sqlite3.OperationalError:
        pass  # Already exists

    conn.commit()
    conn.close()
    return path


def serialize(expansion):
    """Canonical JSON text of the components: one record list per component."""
    return json.dumps([comp.to_records() for comp in expansion.components], separators=(",", ":"))


def deserialize(payload, header):
    records = json.loads(payload)
    cutoff = order_to_cutoff(Fraction(header["order_n"]))
    comps = tuple(QSeries.from_records(r, cutoff) for r in records)
    if len(comps) != header["j"] + 1:
        raise ValueError(f"payload has {len(comps)} components for j = {header['j']}")
    return FormExpansion(header["j"], Fraction(header["k"]), header["pi_power"], header["grp"], comps)


def save_expansion(name, order, expansion, cache_dir=None):
    """Saves or replaces the cached expansion of a named form at the given order."""
    conn = sqlite3.connect(db_path(cache_dir))
    cursor = conn.cursor()
    cursor.execute("""
        INSERT INTO expansions (name, order_n, pi_power, j, k, grp, version, payload, term_count)
        VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)
        ON CONFLICT(name, order_n, version)
        DO UPDATE SET
            pi_power = excluded.pi_power,
            j = excluded.j,
            k = excluded.k,
            grp = excluded.grp,
            payload = excluded.payload,
            term_count = excluded.term_count,
            created = CURRENT_TIMESTAMP
    """, (name, str(Fraction(order)), expansion.p, expansion.j, str(expansion.k), expansion.group,
          source_version(), serialize(expansion), sum(len(c) for c in expansion.components)))
    conn.commit()
    conn.close()


def delete_expansion(name, order, cache_dir=None):
    conn = sqlite3.connect(db_path(cache_dir))
    conn.execute("DELETE FROM expansions WHERE name = ? AND order_n = ? AND version = ?",
                 (name, str(Fraction(order)), source_version()))
    conn.commit()
    conn.close()


def load_expansion(name, order, cache_dir=None):
    """
    Returns the cached expansion or None.
    Unreadable entries are logged, dropped and reported as a miss.
    """
    try:
        conn = sqlite3.connect(db_path(cache_dir))
        conn.row_factory = sqlite3.Row
        row = conn.execute("""
            SELECT name, order_n, pi_power, j, k, grp, payload FROM expansions
            WHERE name = ? AND order_n = ? AND version = ?
        """, (name, str(Fraction(order)), source_version())).fetchone()
        conn.close()
    except sqlite3.DatabaseError as e:
        log.warning("expansion cache unreadable (%s); recomputing %s", e, name)
        return None
    if row is None:
        log.debug("cache miss: %s at order %s", name, order)
        return None
    try:
        expansion = deserialize(row["payload"], dict(row))
    except (ValueError, KeyError, TypeError) as e:
        log.warning("corrupt cache entry for %s at order %s (%s); recomputing", name, order, e)
        delete_expansion(name, order, cache_dir)
        return None
    log.debug("cache hit: %s at order %s", name, order)
    return expansion


def cached_expansion(name, expr, order, cache_dir=None):
    """Expansion of a named form, read from the cache when possible and stored otherwise."""
    hit = load_expansion(name, order, cache_dir)
    if hit is not None:
        try:
            remember(expr, hit)
            return hit
        except ValueError as e:
            log.warning("%s; recomputing %s", e, name)
    expansion = evaluate(expr, order=order)
    try:
        save_expansion(name, order, expansion, cache_dir)
    except sqlite3.DatabaseError as e:
        log.warning("could not write %s to the expansion cache: %s", name, e)
    return expansion


def get_cached_names(cache_dir=None):
    """(name, order, term_count) for every entry of the current source version."""
    conn = sqlite3.connect(db_path(cache_dir))
    rows = conn.execute("""
        SELECT name, order_n, term_count FROM expansions
        WHERE version = ? ORDER BY name, order_n
    """, (source_version(),)).fetchall()
    conn.close()
    return rows


def get_table_columns(cache_dir=None):
    conn = sqlite3.connect(db_path(cache_dir))
    columns = [row[1] for row in conn.execute("PRAGMA table_info(expansions)").fetchall()]
    conn.close()
    return columns
