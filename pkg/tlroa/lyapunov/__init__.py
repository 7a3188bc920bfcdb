from tlroa.lyapunov.solver import *
from tlroa.lyapunov.seed   import *
