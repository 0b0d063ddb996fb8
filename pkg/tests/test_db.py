import os
import tempfile
import unittest

from fwilf import consts
from fwilf.database import (CURRENT_SCHEMA_VERSION, StoreVersionError, d,
                            hasGlobalConnection, openStore, uninstallGlobalConnection)

from . import utils


class DbTests(utils.DbTestCase):
    def test_storeAndFetch(self):
        d().storeTerms('213', consts.CLASSICAL, 'f', [(0, 1), (1, 1), (2, 3)],
                       consts.ENUMERATED)
        assert d().fetchTerms('213', consts.CLASSICAL, 'f') == [
            (0, 1, consts.ENUMERATED), (1, 1, consts.ENUMERATED),
            (2, 3, consts.ENUMERATED)]
        assert d().fetchTerms('213', consts.CLASSICAL, 't') == []
        assert d().fetchTerms('213', consts.CONSECUTIVE, 'f') == []
        assert d().fetchTerms('132', consts.CLASSICAL, 'f') == []

    def test_bigValues(self):
        big = 2 ** 80 + 1
        d().storeTerms('12', consts.CONSECUTIVE, 't', [(30, big)], consts.INGESTED)
        assert d().fetchTerms('12', consts.CONSECUTIVE, 't') == \
            [(30, big, consts.INGESTED)]

    def test_replaceTerm(self):
        d().storeTerms('213', consts.CLASSICAL, 't', [(1, 1), (2, 2)],
                       consts.ENUMERATED)
        d().storeTerms('213', consts.CLASSICAL, 't', [(2, 2)], consts.INGESTED)
        assert d().fetchTerms('213', consts.CLASSICAL, 't') == [
            (1, 1, consts.ENUMERATED), (2, 2, consts.INGESTED)]

    def test_storedSets(self):
        assert d().storedSets() == {}
        d().storeTerms('213', consts.CLASSICAL, 'f', [(0, 1), (1, 1)],
                       consts.ENUMERATED)
        d().storeTerms('213', consts.CLASSICAL, 't', [(1, 1)], consts.ENUMERATED)
        d().storeTerms('12', consts.CONSECUTIVE, 'f', [(0, 1)], consts.ENUMERATED)
        assert d().storedSets() == {('12', consts.CONSECUTIVE): 1,
                                    ('213', consts.CLASSICAL): 3}

    def test_schemaVersion(self):
        assert d().schemaVersion == CURRENT_SCHEMA_VERSION
        d().schemaVersion = 7
        assert d().schemaVersion == 7


class StoreFileTests(unittest.TestCase):
    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()
        self.fname = os.path.join(self.tmpdir.name, 'sequences.db')

    def tearDown(self):
        if hasGlobalConnection():
            d().close()
            uninstallGlobalConnection()
        self.tmpdir.cleanup()

    def test_createAndReopen(self):
        conn = openStore(self.fname)
        assert d() is conn
        conn.storeTerms('21', consts.CLASSICAL, 'f', [(0, 1), (1, 1)],
                        consts.ENUMERATED)
        conn.close()
        uninstallGlobalConnection()

        again = openStore(self.fname)
        assert again.fetchTerms('21', consts.CLASSICAL, 'f') == [
            (0, 1, consts.ENUMERATED), (1, 1, consts.ENUMERATED)]

    def test_versionMismatch(self):
        conn = openStore(self.fname)
        conn.schemaVersion = CURRENT_SCHEMA_VERSION + 1
        conn.close()
        uninstallGlobalConnection()

        with self.assertRaises(StoreVersionError) as cm:
            openStore(self.fname)
        assert cm.exception.found == CURRENT_SCHEMA_VERSION + 1
        assert not hasGlobalConnection()
