"""Exact rational matrices.

Matrices are :class:`sympy.ImmutableMatrix` instances with rational entries.
The helpers here treat empty shapes (``0 x n`` and ``n x 0``) uniformly, so
callers never special-case zero-dimensional vector spaces.
"""

import logging

import sympy

from transchromatic.errors import ShapeError

logger = logging.getLogger(__name__)

ExactMatrix = sympy.ImmutableMatrix


def rational(value):
    return sympy.Rational(value)


def format_rational(value):
    value = sympy.Rational(value)
    if value.q == 1:
        return f"{value.p}"
    return f"{value.p}/{value.q}"


def matrix(rows, cols, entries=None):
    if entries is None:
        return ExactMatrix(sympy.zeros(rows, cols))
    data = [[sympy.Rational(entry) for entry in row] for row in entries]
    if len(data) != rows or any(len(row) != cols for row in data):
        raise ShapeError(f"Expected a {rows}x{cols} matrix")
    if rows == 0 or cols == 0:
        return ExactMatrix(sympy.zeros(rows, cols))
    return ExactMatrix(data)


def zeros(rows, cols):
    return ExactMatrix(sympy.zeros(rows, cols))


def identity(n):
    return ExactMatrix(sympy.eye(n)) if n else zeros(0, 0)


def scalar(value):
    return ExactMatrix([[sympy.Rational(value)]])


def to_rows(m):
    return [
        [sympy.Rational(m[i, j]) for j in range(m.cols)] for i in range(m.rows)
    ]


def multiply(*factors):
    result = factors[0]
    for factor in factors[1:]:
        if result.cols != factor.rows:
            raise ShapeError(
                f"Cannot multiply {result.rows}x{result.cols} "
                f"by {factor.rows}x{factor.cols}"
            )
        if result.rows == 0 or factor.cols == 0 or result.cols == 0:
            result = zeros(result.rows, factor.cols)
        else:
            result = ExactMatrix(result * factor)
    return result


def add(a, b):
    if a.shape != b.shape:
        raise ShapeError(f"Cannot add {a.shape} and {b.shape}")
    if a.rows == 0 or a.cols == 0:
        return a
    return ExactMatrix(a + b)


def subtract(a, b):
    if a.shape != b.shape:
        raise ShapeError(f"Cannot subtract {b.shape} from {a.shape}")
    if a.rows == 0 or a.cols == 0:
        return a
    return ExactMatrix(a - b)


def transpose(m):
    if m.rows == 0 or m.cols == 0:
        return zeros(m.cols, m.rows)
    return ExactMatrix(m.T)


def is_zero(m):
    return all(m[i, j] == 0 for i in range(m.rows) for j in range(m.cols))


def equal(a, b):
    return a.shape == b.shape and all(
        a[i, j] == b[i, j] for i in range(a.rows) for j in range(a.cols)
    )


def trace(m):
    if m.rows != m.cols:
        raise ShapeError("Trace of a non-square matrix")
    if m.rows == 0:
        return sympy.Rational(0)
    return sympy.Rational(m.trace())


def rank(m):
    if m.rows == 0 or m.cols == 0:
        return 0
    return m.rank()


def is_invertible(m):
    return m.rows == m.cols and rank(m) == m.rows


def inverse(m):
    if not is_invertible(m):
        raise ShapeError(f"Matrix of shape {m.shape} is not invertible")
    if m.rows == 0:
        return m
    return ExactMatrix(m.inv())


def block(row_sizes, col_sizes, blocks):
    """Assemble a matrix from a ``{(i, j): block}`` mapping.

    Missing blocks are zero; blocks must match the declared sizes.
    """
    rows, cols = sum(row_sizes), sum(col_sizes)
    result = sympy.zeros(rows, cols)
    row_offsets = _offsets(row_sizes)
    col_offsets = _offsets(col_sizes)
    for (i, j), piece in blocks.items():
        if piece.shape != (row_sizes[i], col_sizes[j]):
            raise ShapeError(
                f"Block ({i}, {j}) has shape {piece.shape}, expected "
                f"{(row_sizes[i], col_sizes[j])}"
            )
        if piece.rows == 0 or piece.cols == 0:
            continue
        r0, c0 = row_offsets[i], col_offsets[j]
        result[r0 : r0 + piece.rows, c0 : c0 + piece.cols] = piece
    return ExactMatrix(result)


def block_diagonal(pieces):
    return block(
        [p.rows for p in pieces],
        [p.cols for p in pieces],
        {(i, i): p for i, p in enumerate(pieces)},
    )


def hstack(pieces, rows):
    blocks = {(0, j): piece for j, piece in enumerate(pieces)}
    return block([rows], [piece.cols for piece in pieces], blocks)


def vstack(pieces, cols):
    blocks = {(i, 0): piece for i, piece in enumerate(pieces)}
    return block([piece.rows for piece in pieces], [cols], blocks)


def kronecker(a, b):
    if 0 in a.shape or 0 in b.shape:
        return zeros(a.rows * b.rows, a.cols * b.cols)
    return ExactMatrix(sympy.kronecker_product(a, b))


def kernel(m):
    """Basis of the kernel, as the columns of a ``cols x k`` matrix.

    The basis is sympy's reduced row-echelon one: each vector has a single
    free coordinate equal to one.
    """
    if m.cols == 0:
        return zeros(0, 0)
    if m.rows == 0:
        return identity(m.cols)
    vectors = m.nullspace()
    if not vectors:
        return zeros(m.cols, 0)
    return hstack([ExactMatrix(v) for v in vectors], m.cols)


def cokernel(m, rows):
    """Quotient map presenting ``Q^rows / image(m)``.

    Returns ``(projection, section)`` with ``projection`` of shape
    ``c x rows`` whose kernel is the column space of ``m`` and ``section``
    of shape ``rows x c`` satisfying ``projection * section = 1``.
    """
    if m.cols == 0:
        projection = identity(rows)
    else:
        projection = transpose(kernel(transpose(m)))
    return projection, right_inverse(projection)


def left_inverse(m):
    """Left inverse of a matrix with independent columns, from pivot rows."""
    if m.cols == 0:
        return zeros(0, m.rows)
    reduced, pivots = ExactMatrix(m.T).rref()
    if len(pivots) != m.cols:
        raise ShapeError("Columns are not linearly independent")
    square = ExactMatrix([[m[r, c] for c in range(m.cols)] for r in pivots])
    selector = matrix(
        m.cols,
        m.rows,
        [[1 if c == r else 0 for c in range(m.rows)] for r in pivots],
    )
    return multiply(inverse(square), selector)


def right_inverse(m):
    """Right inverse of a matrix with independent rows, from pivot columns."""
    return transpose(left_inverse(transpose(m)))


def _offsets(sizes):
    offsets, total = [], 0
    for size in sizes:
        offsets.append(total)
        total += size
    return offsets
