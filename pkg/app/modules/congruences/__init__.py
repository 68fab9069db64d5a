# Congruences module init
from .module import CongruenceModule

__all__ = ["CongruenceModule"]
