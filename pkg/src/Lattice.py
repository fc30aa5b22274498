import logging
import numpy as np


# Exact integer lattice helpers on numpy object arrays. The elimination keeps the
# relation A == S @ D @ T with S and T unimodular.


def exgcd(a: int, b: int) -> np.ndarray:
    """ Extended Euclid as a row operation.

    :param int a: First entry.
    :param int b: Second entry.
    :return: 2x2 integer matrix M of determinant 1 with M @ [a, b] = [gcd(a, b), 0]
    :rtype: np.ndarray
    """
    if a == 0 and b == 0:
        return np.eye(2, dtype = object)
    a_sign = -1 if a < 0 else 1
    b_sign = -1 if b < 0 else 1
    a, b = a * a_sign, b * b_sign

    M = np.array([[b, 0, 1],
                  [a, 1, 0]], dtype = object)
    while M[1, 0] != 0:
        q = M[0, 0] // M[1, 0]
        M[0] -= q * M[1]
        M = M[::-1]

    g = M[0, 0]
    M = M[:, 1:]
    M *= [a_sign, b_sign]
    if g != 0:
        M[1] = [- b_sign * b // g, a_sign * a // g]
    return M


def inv_2x2_det1(M: np.ndarray) -> np.ndarray:
    return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]], dtype = object)


def normal_form(A) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """ Diagonalizes an integer matrix by unimodular row and column operations.

    Rows and columns are cleared alternately until the pivot divides its row and
    column. The diagonal is not made divisibility-ordered; nothing downstream
    needs it.

    :param A: Integer matrix.
    :return: (S, D, T) with A == S @ D @ T, D diagonal, det S = det T = 1
    :rtype: tuple[np.ndarray, np.ndarray, np.ndarray]
    """
    A = np.array(A, dtype = object)
    if A.ndim != 2:
        logging.error("normal_form: expected a matrix")
        raise ValueError(f"expected a 2D integer matrix, got shape {A.shape}")
    D = A.copy()
    S, T = np.eye(D.shape[0], dtype = object), np.eye(D.shape[1], dtype = object)

    def clear_row(i):
        if (D[i, i + 1:] == 0).all():
            return False
        for j in range(i + 1, D.shape[1]):
            M = exgcd(D[i, i], D[i, j]).T
            D[:, [i, j]] = D[:, [i, j]] @ M
            T[[i, j]] = inv_2x2_det1(M) @ T[[i, j]]
        return True

    def clear_col(i):
        if (D[i + 1:, i] == 0).all():
            return False
        for j in range(i + 1, D.shape[0]):
            M = exgcd(D[i, i], D[j, i])
            D[[i, j]] = M @ D[[i, j]]
            S[:, [i, j]] = S[:, [i, j]] @ inv_2x2_det1(M)
        return True

    for i in range(min(D.shape)):
        clear_col(i)
        while clear_row(i) and clear_col(i):
            pass
    return S, D, T


def determinant(A) -> int:
    """ Exact determinant of a square integer matrix."""
    A = np.array(A, dtype = object)
    if A.size == 0:
        return 1
    if A.shape[0] != A.shape[1]:
        logging.error("determinant: matrix is not square")
        raise ValueError(f"determinant of a non-square matrix {A.shape}")
    _, D, _ = normal_form(A)
    det = 1
    for i in range(D.shape[0]):
        det *= D[i, i]
    return int(det)


def rank(A) -> int:
    A = np.array(A, dtype = object)
    if A.size == 0:
        return 0
    _, D, _ = normal_form(A)
    return sum(1 for i in range(min(D.shape)) if D[i, i] != 0)


def index_in_saturation(A) -> int:
    """ Index of the column lattice of A inside its saturation."""
    A = np.array(A, dtype = object)
    if A.size == 0:
        return 1
    _, D, _ = normal_form(A)
    d = [abs(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0]
    out = 1
    for x in d:
        out *= x
    return int(out)


def saturation(A) -> np.ndarray:
    """ Basis, as columns, of the saturation of the column lattice of A.

    :param A: n x k integer matrix.
    :return: n x r integer matrix, r the rank of A
    :rtype: np.ndarray
    """
    A = np.array(A, dtype = object)
    if A.size == 0:
        return np.zeros((A.shape[0], 0), dtype = object)
    S, D, _ = normal_form(A)
    keep = [i for i in range(min(D.shape)) if D[i, i] != 0]
    return S[:, keep]
