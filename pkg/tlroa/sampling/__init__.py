from tlroa.sampling.loss    import *
from tlroa.sampling.sampler import *
