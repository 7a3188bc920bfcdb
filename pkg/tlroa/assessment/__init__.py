from tlroa.assessment.assessor import *
