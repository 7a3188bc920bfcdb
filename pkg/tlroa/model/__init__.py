from tlroa.model.swing       import *
from tlroa.model.equilibrium import *
