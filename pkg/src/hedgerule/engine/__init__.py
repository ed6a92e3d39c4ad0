from .models import Answer, Program
from .program import consult
from .service import Session
from .solver import Solver
