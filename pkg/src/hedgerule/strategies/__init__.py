from .base import Step, Strategy
from .combinators import NATIVES, is_native, native_for
