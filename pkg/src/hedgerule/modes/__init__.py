from .checker import check_clause, check_query, program_check
from .models import ModeTable, Violation
