from tlroa             import utils
from tlroa.exceptions  import *
from tlroa.datatypes   import *
from tlroa.model       import *
from tlroa.ode         import *
from tlroa.lyapunov    import *
from tlroa.sampling    import *
from tlroa.roa         import *
from tlroa.assessment  import *
from tlroa.csvio       import *
from tlroa.config      import *
from tlroa.jsonio      import *
from tlroa.parallel    import *
from tlroa._version    import __version__
