import sqlite3
import sys
from pathlib import Path

# Add current directory to path
sys.path.append(str(Path(__file__).parent))

import database
from formalg import evaluate
from registry import get_form


def test_init_db_creates_expansion_table(tmp_path):
    path = database.init_db(tmp_path)
    assert path == tmp_path / database.DB_NAME
    assert database.get_table_columns(tmp_path) == database.EXPANSION_COLUMNS
    # idempotent
    database.init_db(tmp_path)
    assert database.get_table_columns(tmp_path) == database.EXPANSION_COLUMNS


def test_migration_adds_term_count(tmp_path):
    conn = sqlite3.connect(database.db_path(tmp_path))
    conn.execute("""
        CREATE TABLE expansions (
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
    conn.commit()
    conn.close()
    database.init_db(tmp_path)
    assert "term_count" in database.get_table_columns(tmp_path)


def test_round_trip(tmp_path):
    database.init_db(tmp_path)
    expansion = evaluate(get_form("G_12"), order=1)
    database.save_expansion("G_12", 1, expansion, tmp_path)
    loaded = database.load_expansion("G_12", 1, tmp_path)
    assert loaded.components == expansion.components
    assert (loaded.j, loaded.k, loaded.p, loaded.group) == (expansion.j, expansion.k, expansion.p, expansion.group)
    names = database.get_cached_names(tmp_path)
    assert names == [("G_12", "1", sum(len(c) for c in expansion.components))]


def test_upsert_keeps_one_row(tmp_path):
    database.init_db(tmp_path)
    expansion = evaluate(get_form("x1"), order=1)
    database.save_expansion("x1", 1, expansion, tmp_path)
    database.save_expansion("x1", 1, expansion, tmp_path)
    assert len(database.get_cached_names(tmp_path)) == 1


def test_miss_returns_none(tmp_path):
    database.init_db(tmp_path)
    assert database.load_expansion("x1", 3, tmp_path) is None


def test_corrupt_entry_is_dropped(tmp_path):
    database.init_db(tmp_path)
    database.save_expansion("x2", 1, evaluate(get_form("x2"), order=1), tmp_path)
    conn = sqlite3.connect(database.db_path(tmp_path))
    conn.execute("UPDATE expansions SET payload = ? WHERE name = ?", ("[[{\"A\": 0}]]", "x2"))
    conn.commit()
    conn.close()
    assert database.load_expansion("x2", 1, tmp_path) is None
    assert database.get_cached_names(tmp_path) == []


def test_cached_expansion_recomputes_and_stores(tmp_path):
    database.init_db(tmp_path)
    expr = get_form("x3")
    first = database.cached_expansion("x3", expr, 1, tmp_path)
    assert first.components == evaluate(expr, order=1).components
    assert database.load_expansion("x3", 1, tmp_path) is not None
    second = database.cached_expansion("x3", expr, 1, tmp_path)
    assert second.components == first.components


def test_unreadable_file_is_a_miss(tmp_path):
    database.db_path(tmp_path).write_text("not a database")
    assert database.load_expansion("x1", 1, tmp_path) is None


def test_verify_schema_reports_success(tmp_path, capsys):
    from verify_schema import check_schema

    assert check_schema(tmp_path)
    assert capsys.readouterr().out.startswith("SUCCESS")
