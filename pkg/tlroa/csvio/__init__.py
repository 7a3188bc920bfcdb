from tlroa.csvio.row        import *
from tlroa.csvio.header     import *
from tlroa.csvio.trajectory import *
from tlroa.csvio.boundary   import *
from tlroa.csvio.grid       import *
from tlroa.csvio.table      import *
