import os
import unittest

import fwilf.database
from fwilf.forests import Forest, parseForest

# an in-memory store is much faster and leaves nothing behind
TEST_DB_FNAME = ":memory:"
RESOURCES = os.path.join(os.path.dirname(__file__), "resources")

# Trees drawn as parent lists p(1),...,p(n).
PATH_1234 = parseForest('0,1,2,3')
CHERRY = parseForest('0,1,1')
SMALL_FOREST = parseForest('0,1,0,3,3')


def forestFromEdges(edges, roots) -> Forest:
    "Forest with arbitrary labels from (parent, child) pairs and a root list."
    parent = {r: 0 for r in roots}
    for p, c in edges:
        parent[c] = p
    return Forest(parent)


class DbTestCase(unittest.TestCase):
    # common to all store-using test cases
    def dbSetUp(self):
        sqliteConn = fwilf.database.makeDatabase(TEST_DB_FNAME)
        self.conn = fwilf.database.DatabaseConnection(sqliteConn)
        fwilf.database.installGlobalConnection(self.conn)

    def dbTearDown(self):
        fwilf.database.d().close()
        fwilf.database.uninstallGlobalConnection()

    # reimplement these if additional setup is needed
    def setUp(self):
        self.dbSetUp()

    def tearDown(self):
        self.dbTearDown()
