# rankform/errors.py
from typing import Optional


class RankFormError(Exception):
    """Base class for every error raised by rankform"""
    exit_code: int = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ValidationError(RankFormError):
    """Bad input: malformed files, invalid parameters, invalid graphs"""
    exit_code = 2


class NumericalError(RankFormError):
    """A computation could not produce a trustworthy result"""
    exit_code = 3


# Graph structure

class GraphError(ValidationError):
    pass


class SelfLoop(GraphError):
    def __init__(self, node: int):
        self.node = node
        super().__init__(f"node {node} links to itself")


class DuplicateEdge(GraphError):
    def __init__(self, src: int, dst: int):
        self.src = src
        self.dst = dst
        super().__init__(f"duplicate edge {src} -> {dst}")


class TargetOutOfRange(GraphError):
    def __init__(self, src: int, dst: int, n: Optional[int] = None):
        self.src = src
        self.dst = dst
        self.n = n
        bound = f" (graph has {n} nodes)" if n is not None else ""
        super().__init__(f"edge {src} -> {dst} references a node out of range{bound}")


class ParseError(ValidationError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class InvalidSpec(ValidationError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"invalid structure: {reason}")


# Parameters

class COutOfRange(ValidationError):
    def __init__(self, c: float):
        self.c = c
        super().__init__(f"c out of range: {c} (must satisfy 0 < c < 1)")


class InvalidParams(ValidationError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"invalid parameters: {reason}")


class InvalidN(ValidationError):
    def __init__(self, n: int):
        self.n = n
        super().__init__(f"complete graph needs at least 2 nodes, got {n}")


class InvalidNode(ValidationError):
    def __init__(self, node: int, n: Optional[int] = None):
        self.node = node
        self.n = n
        bound = f" (valid ids are 1..{n})" if n is not None else ""
        super().__init__(f"invalid node {node}{bound}")


class SameNode(ValidationError):
    def __init__(self, node: int):
        self.node = node
        super().__init__(f"source and target are the same node ({node})")


class InvalidRange(ValidationError):
    def __init__(self, lo: float, hi: float):
        self.lo = lo
        self.hi = hi
        super().__init__(f"invalid c range [{lo}, {hi}] (need 0 < lo < hi < 1)")


class StepOutOfRange(ValidationError):
    def __init__(self, c: float, h: float):
        self.c = c
        self.h = h
        super().__init__(f"finite-difference step {h} at c={c} leaves (0, 1)")


class ZeroVector(ValidationError):
    def __init__(self):
        super().__init__("weight vector has no positive entry")


class FingerprintMismatch(ValidationError):
    def __init__(self, expected: str, actual: str):
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"cached inverse belongs to graph {expected[:12]}, not {actual[:12]}"
        )


# Numerics

class Singular(NumericalError):
    def __init__(self, block: str = "matrix"):
        self.block = block
        super().__init__(f"singular {block}: pivot below threshold")


class NotConverged(NumericalError):
    def __init__(self, iterations: int):
        self.iterations = iterations
        super().__init__(f"no convergence after {iterations} iterations")


class DegenerateScale(NumericalError):
    def __init__(self, d: float):
        self.d = d
        super().__init__(f"rescaling denominator d={d:.3e} is too close to zero")


class NonPositiveRank(NumericalError):
    def __init__(self, node: int, value: float):
        self.node = node
        self.value = value
        super().__init__(f"closed form produced non-positive rank {value} at node {node}")
