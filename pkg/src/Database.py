import sqlite3
import contextlib as clib
import json
from src.Invariants import *


def initialize_database(db_name: str):
    """ Initializes the database by creating the table if it doesn't exist

    :param str db_name: Name of the database
    :return: Returns True if successfully initialized.
    """

    query = """CREATE TABLE IF NOT EXISTS InvariantRecords (
    triangulation TEXT,
    signs TEXT,
    betti TEXT,
    ell INTEGER,
    r_index INTEGER,
    iota_degree INTEGER,
    counterexample INTEGER,
    record TEXT,
    PRIMARY KEY (triangulation, signs)
    )"""

    with clib.closing(sqlite3.connect(db_name)) as con:
        with con:
            with clib.closing(con.cursor()) as cursor:
                cursor.execute(query)
                con.commit()
    return True


def add_record_to_db(db_name: str, triangulation: str, record: InvariantRecord):
    """ Adds one analysed sign distribution to the database

    :param str db_name: Name of the database file
    :param str triangulation: Label of the triangulation the record belongs to
    :param InvariantRecord record: Record to be stored, pages left out
    :return: True if successfully added
    :rtype: bool
    """

    with clib.closing(sqlite3.connect(db_name)) as con:
        with con:
            with clib.closing(con.cursor()) as cursor:
                cursor.execute("INSERT OR REPLACE INTO InvariantRecords VALUES(?, ?, ?, ?, ?, ?, ?, ?)",
                               (triangulation, record.signs, ",".join(str(b) for b in record.betti_RX),
                                record.ell, record.r_index, record.iota_degree, int(record.counterexample),
                                json.dumps(record.to_json(side = None), sort_keys = True)))
                con.commit()
    return True


def is_record_exists(db_name: str, triangulation: str, signs: str) -> bool:
    """ Checks if a sign distribution of the triangulation is already stored

    :param str db_name: Name of the database file
    :param str triangulation: Label of the triangulation
    :param str signs: Label of the sign distribution
    :return: True if the record is present in the database, False otherwise
    :rtype: bool
    """

    with clib.closing(sqlite3.connect(db_name)) as con:
        with con:
            with clib.closing(con.cursor()) as cursor:
                cursor.execute("SELECT * FROM InvariantRecords WHERE triangulation == ? AND signs == ?",
                               (triangulation, signs))
                sample_data = cursor.fetchone()
                return True if sample_data is not None else False


def load_records(db_name: str, triangulation: Optional[str] = None) -> list:
    """ Loads the stored records, all of them or those of one triangulation

    :param str db_name: Name of the database file
    :param str triangulation: Optional label to filter on
    :return: list of sql row objects
    :rtype: list
    """

    with clib.closing(sqlite3.connect(db_name)) as con:
        with con:
            con.row_factory = sqlite3.Row
            with clib.closing(con.cursor()) as cursor:
                if triangulation is None:
                    cursor.execute("SELECT * FROM InvariantRecords ORDER BY triangulation, signs")
                else:
                    cursor.execute("SELECT * FROM InvariantRecords WHERE triangulation == ? ORDER BY signs",
                                   (triangulation,))
                result = [row for row in cursor.fetchall()]
                return result


def delete_records(db_name: str, triangulation: str) -> None:
    """ Delete every record of the given triangulation

    :param str db_name: Name of the database file
    :param str triangulation: Label of the triangulation
    :return: None
    """

    with clib.closing(sqlite3.connect(db_name)) as con:
        with con:
            with clib.closing(con.cursor()) as cursor:
                cursor.execute("DELETE FROM InvariantRecords WHERE triangulation == ?", (triangulation,))
                con.commit()
    return
