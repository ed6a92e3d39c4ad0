from .reader import parse_program, parse_query, parse_term, parse_hedge
from .printer import format_term, format_hedge, format_substitution, format_literal
