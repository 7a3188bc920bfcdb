from tlroa.cli.manifest import *
from tlroa.cli.commands import *
from tlroa.cli.main     import *
