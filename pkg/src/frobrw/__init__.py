"""String-diagram rewriting modulo Frobenius structure, by DPO rewriting of hypergraph cospans."""
from .errors import FrobrwError, GraphError, RewriteError, SemanticsError, SignatureError, TermError
from .hypergraph import Hypergraph, are_isomorphic, find_homomorphisms
from .signature import Signature, make_signature, parse_signature_text
from .cospan import Cospan, InterfacedGraph, compose, cospan_iso, fold, tensor
from .term import interp, parse, term_equal_mod_frobenius

__version__ = "0.1.0"
