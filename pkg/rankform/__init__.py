# rankform/__init__.py
from .config.config import Config
from .graph import DirectedGraph, StructureKind, StructureSpec, WeightVector, generate
from .solver import RankVector, SolveOptions, Engine, Variant, pagerank_r1, pagerank_r2, pagerank_r3, normalize
from .closed_forms import ClosedFormResult, closed_form
from .app import RankForm

__version__ = Config.VERSION
