"""Rainbow solutions of x - y = z^k: power digraphs, exhaustive search and prefix experiments."""

__version__ = "0.1.0"

from .arith import DomainError, factorize, frobenius_bound, multiplicative_order, support_condition, t_decomposition
from .classify import StructuralReport, generate_rainbow_free, structural_check
from .coloring import Coloring, RainbowCertificate, find_rainbow_mod, is_exact, is_rainbow_free
from .digraph import PowerDigraph, build, component_prediction, cycle_vertices
from .prefix import PrefixColoring, density_experiment, find_rainbow_prefix, lift
from .search import RbResult, enumerate_rainbow_free_3colorings, rb_bruteforce, rb_predicted
