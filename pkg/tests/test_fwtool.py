import io
import json
import os
import tempfile
import unittest

from fwilf import consts
from fwtool.fwtool import EXIT_ERROR, EXIT_OK, EXIT_REFUTED, run

from . import utils


def runTool(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(list(argv), out, err)
    return status, out.getvalue(), err.getvalue()


class CommandTests(unittest.TestCase):
    def testCount(self):
        status, out, err = runTool('count', '--set', '21', '--n', '4')
        assert status == EXIT_OK
        assert err == ''
        rep = json.loads(out)
        assert rep['command'] == 'count'
        assert rep['patternSet'] == '21'
        assert rep['result'] == {'n': 4, 'f': 24, 't': 6}
        assert rep['provenance'] == {'t': consts.ENUMERATED, 'f': consts.ENUMERATED}

    def testCountRange(self):
        status, out, _ = runTool('count', '--set', '213', '--nmax', '3')
        assert status == EXIT_OK
        assert json.loads(out)['result'] == {'t': [1, 2, 8], 'f': [1, 1, 3, 15]}

    def testSameOutputTwice(self):
        argv = ('stats', '--set', '132,231,321', '--statistic', 'root', '--n', '4')
        assert runTool(*argv) == runTool(*argv)

    def testAvoid(self):
        status, out, _ = runTool('avoid', '--set', '12', '--forest', '0,1')
        assert status == EXIT_OK
        result = json.loads(out)['result']
        assert result['avoids'] is False
        assert result['instances'] == {'12': [[1, 2]]}

    def testBijection(self):
        status, out, _ = runTool('bij', '--map', 'alpha', '--forest', '0,1,2,3')
        assert status == EXIT_OK
        assert json.loads(out)['result']['image'] == '0,3,4,1'

    def testEquivalences(self):
        status, out, _ = runTool('equiv', '--mode', 'cluster', '--p', '123',
                                 '--q', '132', '--nmax', '5')
        assert status == EXIT_REFUTED
        result = json.loads(out)['result']
        assert result['consistent'] is False
        assert result['witness'] == [2, 4, 3, 2]

        status, out, _ = runTool('equiv', '--mode', 'wilf', '--set', '21',
                                 '--set2', '12', '--nmax', '5')
        assert status == EXIT_OK
        assert json.loads(out)['result']['consistent'] is True

    def testStatsCsv(self):
        status, out, _ = runTool('stats', '--set', '21', '--n', '4', '--format', 'csv')
        assert status == EXIT_OK
        lines = out.splitlines()
        assert lines[0].startswith('# fwtool ')
        assert 'set=21 kind=classical' in lines[0]
        assert lines[1:] == ['n,statistic,value,count', '4,treeCount,1,6',
                             '4,treeCount,2,11', '4,treeCount,3,6', '4,treeCount,4,1']

    def testIngestCheck(self):
        fname = os.path.join(utils.RESOURCES, 'avoid213.forestseq')
        status, out, _ = runTool('ingest-check', fname, '--check-n', '3')
        assert status == EXIT_OK
        rep = json.loads(out)
        assert rep['result']['accepted'] is True
        assert rep['result']['uncoveredHypothesis'] is True
        assert rep['provenance'] == {'t': consts.INGESTED, 'f': consts.INGESTED}


class ErrorTests(unittest.TestCase):
    def assertError(self, *argv):
        status, out, err = runTool(*argv)
        assert status == EXIT_ERROR
        assert out == ''
        assert err.startswith('fwtool: error: ')
        assert len(err.splitlines()) == 1
        return err

    def testBadPattern(self):
        assert '1a2' in self.assertError('count', '--set', '1a2', '--n', '3')

    def testUsage(self):
        self.assertError()
        self.assertError('count', '--set', '12')
        self.assertError('count', '--n', '3')
        self.assertError('count', '--set', '12', '--n', '3', '--format', 'csv')

    def testCap(self):
        assert 'cap' in self.assertError('count', '--set', '12', '--n', '5',
                                         '--cap', '4')

    def testBadSequenceFile(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            fname = os.path.join(tmpdir, 'bad.forestseq')
            with open(fname, 'w', encoding='utf-8') as f:
                f.write("#forestseq v1 set=213 kind=classical\nf 0 1\nf 1 2\n")
            assert 'f_1 = 2' in self.assertError('ingest-check', fname)
        self.assertError('ingest-check', fname)


class StoreTests(unittest.TestCase):
    def testStoreIsReused(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            store = os.path.join(tmpdir, 'seq.db')
            first = runTool('count', '--set', '213', '--nmax', '4', '--store', store)
            second = runTool('count', '--set', '213', '--nmax', '3', '--store', store)
            assert first[0] == second[0] == EXIT_OK
            assert json.loads(second[1])['result'] == {'t': [1, 2, 8],
                                                      'f': [1, 1, 3, 15]}
