"""nose2 plugin: -P filtering and the doctested .rst documents."""

__all__ = [
    'NosePlugin',
    ]


import os
import re
import doctest

from nose2.events import Plugin
from pkg_resources import resource_filename


FLAGS = doctest.ELLIPSIS | doctest.NORMALIZE_WHITESPACE
TOPDIR = os.path.abspath(
    os.path.dirname(resource_filename('jonquil', '__init__.py')))


def setup(testobj):
    """Doctest fixture: the documents work over Q."""
    from jonquil.fields import field_from_descriptor
    testobj.globs['Q'] = field_from_descriptor('Q')


class NosePlugin(Plugin):
    configSection = 'jonquil'

    def __init__(self):
        super(NosePlugin, self).__init__()
        self.patterns = []
        self.addArgument(self.patterns, 'P', 'pattern',
                         'Only run tests and documents matching pattern')

    def matches(self, name):
        return (not self.patterns
                or any(re.search(pattern, name) for pattern in self.patterns))

    def getTestCaseNames(self, event):
        case = '{}.{}'.format(
            event.testCase.__module__, event.testCase.__name__)
        if self.matches(case):
            return
        for name in filter(event.isTestMethod, dir(event.testCase)):
            if not self.matches('{}.{}'.format(case, name)):
                event.excludedNames.append(name)

    def handleFile(self, event):
        path = event.path[len(TOPDIR)+1:]
        if os.path.splitext(path)[1] != '.rst' or not self.matches(path):
            return
        test = doctest.DocFileTest(
            path, package='jonquil', optionflags=FLAGS, setUp=setup)
        # Keep the verbose listing to one line per document.
        test.shortDescription = lambda: None
        event.extraTests.append(test)
