from tlroa.ode.config import *
from tlroa.ode.engine import *
