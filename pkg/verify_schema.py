import sqlite3
import sys

from database import EXPANSION_COLUMNS, db_path, get_table_columns, init_db


def check_schema(cache_dir=None):
    path = init_db(cache_dir)
    try:
        columns = get_table_columns(cache_dir)
    except sqlite3.DatabaseError as e:
        print(f"FAILURE: {path} is not a readable cache ({e}).")
        return False

    missing = [c for c in EXPANSION_COLUMNS if c not in columns]
    if missing:
        print(f"FAILURE: columns MISSING from expansions: {', '.join(missing)}")
        return False
    print(f"SUCCESS: {db_path(cache_dir)} has all {len(EXPANSION_COLUMNS)} expansion columns.")
    return True


if __name__ == "__main__":
    sys.exit(0 if check_schema(sys.argv[1] if len(sys.argv) > 1 else None) else 1)
