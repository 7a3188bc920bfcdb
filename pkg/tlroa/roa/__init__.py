from tlroa.roa.geometry import *
from tlroa.roa.forward  import *
from tlroa.roa.reverse  import *
from tlroa.roa.study    import *
