from tlroa.config.section import *
from tlroa.config.loader  import *
