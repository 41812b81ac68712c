"""
fixcat: fixed-point engine for endofunctor (co)algebras over finite categories.
"""
__version__ = "0.1.0"
FORMAT_TAG = "fixcat/1"
