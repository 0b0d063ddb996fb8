"""
database.py - SQLite store for avoider counting sequences
"""
# Copyright (c) 2024 the fwilf developers

from __future__ import annotations

import pickle
import sqlite3 as sqlite
import time
from typing import Dict, Iterable, List, Optional, Tuple, Union, overload

CURRENT_SCHEMA_VERSION = 1

_globalConnection: Optional[DatabaseConnection] = None


class StoreVersionError(Exception):
    "The store was written with a schema this version cannot read."
    def __init__(self, found: int) -> None:
        super().__init__()
        self.found = found
        self.text = (f"Sequence store has schema version {found}, "
                     f"but version {CURRENT_SCHEMA_VERSION} is required.")

    def __str__(self):
        return self.text


class DatabaseConnection:
    """
    Connection to a sequence store. Wrapper around sqlite3.Connection.

    Each stored sequence is keyed by the text of its pattern set and the
    instance kind; every term carries its own provenance.
    """
    @overload
    def __init__(self, fnameOrConn: str) -> None: ...
    @overload
    def __init__(self, fnameOrConn: sqlite.Connection) -> None: ...
    def __init__(self, fnameOrConn: Union[str, sqlite.Connection]) -> None:
        if isinstance(fnameOrConn, sqlite.Connection):
            self.connection = fnameOrConn
            self.location = None
        else:
            self.connection = sqlite.connect(fnameOrConn)
            self.location = fnameOrConn
        self.cursor: sqlite.Cursor = self.connection.cursor()
        self.lastSavedTime: float = time.time()

    @property
    def schemaVersion(self) -> int:
        "Version of the schema the connected store is using."
        self.cursor.execute('SELECT conf FROM conf')
        conf = pickle.loads(self.cursor.fetchone()[0])
        return conf.get('schemaVersion', 0)
    @schemaVersion.setter
    def schemaVersion(self, version: int) -> None:
        self.cursor.execute('SELECT conf FROM conf')
        conf = pickle.loads(self.cursor.fetchone()[0])
        conf['schemaVersion'] = version
        self.cursor.execute('UPDATE conf SET conf = ?', (pickle.dumps(conf),))
        self.connection.commit()

    def close(self) -> None:
        "Close this connection."
        self.forceSave()
        self.connection.close()

    def forceSave(self) -> None:
        self.connection.commit()
        self.lastSavedTime = time.time()

    #### Sequences ####
    def _sequenceId(self, setText: str, kind: str, create: bool) -> Optional[int]:
        self.cursor.execute(
            'SELECT qid FROM sequences WHERE patternSet = ? AND kind = ?',
            (setText, kind))
        row = self.cursor.fetchone()
        if row is not None:
            return row[0]
        if not create:
            return None
        self.cursor.execute(
            'INSERT INTO sequences (patternSet, kind) VALUES (?, ?)',
            (setText, kind))
        return self.cursor.lastrowid

    def storeTerms(self, setText: str, kind: str, series: str,
                   terms: Iterable[Tuple[int, int]], provenance: str) -> None:
        """
        Save (n, value) terms of series 't' or 'f'. A term already in the
        store is replaced.
        """
        assert series in ('t', 'f'), f"Unknown series '{series}'"
        qid = self._sequenceId(setText, kind, create=True)
        self.cursor.executemany(
            '''INSERT OR REPLACE INTO terms (qid, series, n, value, provenance)
               VALUES (?, ?, ?, ?, ?)''',
            ((qid, series, n, str(value), provenance) for n, value in terms))
        self.forceSave()

    def fetchTerms(self, setText: str, kind: str, series: str
                   ) -> List[Tuple[int, int, str]]:
        "Return (n, value, provenance) for series 't' or 'f', in order of n."
        qid = self._sequenceId(setText, kind, create=False)
        if qid is None:
            return []
        self.cursor.execute(
            '''SELECT n, value, provenance FROM terms
               WHERE qid = ? AND series = ? ORDER BY n''',
            (qid, series))
        return [(n, int(value), prov) for n, value, prov in self.cursor.fetchall()]

    def storedSets(self) -> Dict[Tuple[str, str], int]:
        "Map (pattern set text, kind) to the number of stored terms."
        self.cursor.execute(
            '''SELECT s.patternSet, s.kind, COUNT(t.n) FROM sequences s
               LEFT JOIN terms t ON t.qid = s.qid
               GROUP BY s.qid ORDER BY s.patternSet, s.kind''')
        return {(setText, kind): count
                for setText, kind, count in self.cursor.fetchall()}


def installGlobalConnection(conn: DatabaseConnection) -> None:
    "Set the global store connection."
    global _globalConnection
    _globalConnection = conn


def hasGlobalConnection() -> bool:
    return _globalConnection is not None


def uninstallGlobalConnection() -> None:
    global _globalConnection
    _globalConnection = None


def d() -> DatabaseConnection:
    "Return the global store connection."
    assert _globalConnection is not None, \
        "Tried to access the sequence store before initialization"
    return _globalConnection


#### Store creation ####
def makeDatabase(fname: str) -> sqlite.Connection:
    """
    Create a new, empty sequence store at file /fname/.
    """
    conn = sqlite.connect(fname)
    curs = conn.cursor()
    x = curs.execute

    x('''CREATE TABLE sequences (
             qid INTEGER PRIMARY KEY,
             patternSet TEXT,
             kind TEXT,
             UNIQUE (patternSet, kind)
         )''')

    # Values are decimal text; SQLite integers stop at 64 bits.
    x('''CREATE TABLE terms (
             qid INTEGER,
             series TEXT,
             n INTEGER,
             value TEXT,
             provenance TEXT,
             PRIMARY KEY (qid, series, n)
         )''')

    x('''CREATE TABLE conf (conf TEXT)''')
    x('''INSERT INTO conf (conf) VALUES (?)''',
      (pickle.dumps({'schemaVersion': CURRENT_SCHEMA_VERSION}),))

    conn.commit()
    return conn


def openStore(fname: str) -> DatabaseConnection:
    """
    Open the store at /fname/, creating it if the file holds no store yet,
    and install it as the global connection.
    """
    conn = sqlite.connect(fname)
    exists = conn.execute(
        "SELECT name FROM sqlite_master WHERE type = 'table' AND name = 'conf'"
    ).fetchone()
    conn.close()
    if not exists:
        makeDatabase(fname).close()
    dconn = DatabaseConnection(fname)
    if dconn.schemaVersion != CURRENT_SCHEMA_VERSION:
        found = dconn.schemaVersion
        dconn.close()
        raise StoreVersionError(found)
    installGlobalConnection(dconn)
    return dconn
