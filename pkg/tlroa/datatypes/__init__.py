from tlroa.datatypes.params     import *
from tlroa.datatypes.scenario   import *
from tlroa.datatypes.state      import *
from tlroa.datatypes.trajectory import *
from tlroa.datatypes.verdict    import *
from tlroa.datatypes.boundary   import *
from tlroa.datatypes.grid       import *
from tlroa.datatypes.assessment import *
