"""Workbench for infinitary term rewriting at desk scale.

Submodules: terms (finite and rational terms), rewrite (matching, traces
with omega-limit closure, bounded search), turing (deterministic
two-sided machines), omega (non-deterministic one-sided machines on
omega-tapes), encode (machine-to-system compilers and the word-to-term
map), laws (executable checks), machines (file formats and fixtures),
cli (the `irw` command).
"""

__version__ = "0.1.0"
