"""
SAT Circuit Sampler - CNF to Circuit Transformation and Gradient Sampling

Recovers a multi-level, multi-output Boolean function from a DIMACS CNF
instance and draws diverse satisfying assignments by gradient descent over
a probabilistic relaxation of the recovered circuit.
"""

__version__ = "1.0.0"
__author__ = "SAT Circuit Sampler Team"
