# Models
from .coalgebra import *
from .colored import *
from .structures import *
from .universal import *
from .report import CheckResult, ValidationReport, CommandReport
