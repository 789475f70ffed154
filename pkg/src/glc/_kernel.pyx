# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled truth-table kernel: evaluates a postfix program over every frame."""
from libc.stdint cimport uint64_t, int32_t
from libc.stdlib cimport malloc, free

cdef enum:
    MAX_STACK = 4096

cdef uint64_t LOW_MASKS[6]
LOW_MASKS[0] = 0xAAAAAAAAAAAAAAAAULL
LOW_MASKS[1] = 0xCCCCCCCCCCCCCCCCULL
LOW_MASKS[2] = 0xF0F0F0F0F0F0F0F0ULL
LOW_MASKS[3] = 0xFF00FF00FF00FF00ULL
LOW_MASKS[4] = 0xFFFF0000FFFF0000ULL
LOW_MASKS[5] = 0xFFFFFFFF00000000ULL


def truth_table(program, int nvars):
    """Bitset (as int) whose bit i is the program's value on frame i."""
    cdef Py_ssize_t n = len(program)
    if nvars < 0 or nvars > 30:
        raise ValueError("nvars out of range")
    cdef int32_t *ops = <int32_t *>malloc(n * sizeof(int32_t) + 1)
    cdef int32_t *args = <int32_t *>malloc(n * sizeof(int32_t) + 1)
    cdef Py_ssize_t i
    cdef int depth = 0, max_depth = 0
    try:
        for i in range(n):
            op, arg = program[i]
            ops[i] = op
            if op == 0 or op == 1:
                if arg < 0 or arg >= nvars:
                    raise ValueError("variable index out of range")
                args[i] = nvars - 1 - arg
                depth += 1
            elif op == 2:
                args[i] = arg
                depth += 1
            elif op == 3 or op == 4:
                args[i] = 0
                depth -= 1
                if depth < 1:
                    raise ValueError("stack underflow")
            else:
                raise ValueError("unknown opcode")
            if depth > max_depth:
                max_depth = depth
        if depth != 1:
            raise ValueError("program must leave exactly one value")
        if max_depth > MAX_STACK:
            raise ValueError("program too deep")
        return _run(ops, args, n, nvars, max_depth)
    finally:
        free(ops)
        free(args)


cdef object _run(int32_t *ops, int32_t *args, Py_ssize_t n, int nvars, int max_depth):
    cdef Py_ssize_t nframes = (<Py_ssize_t>1) << nvars
    cdef Py_ssize_t nwords = (nframes + 63) // 64
    # one column of nwords words per stack slot; each op sweeps whole columns
    cdef uint64_t *stack = <uint64_t *>malloc(max_depth * nwords * sizeof(uint64_t))
    cdef uint64_t *top
    cdef uint64_t *below
    cdef Py_ssize_t w, i
    cdef int sp = 0, p
    cdef int32_t op
    cdef uint64_t fill, word
    if stack == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(n):
                op = ops[i]
                if op <= 2:
                    top = stack + sp * nwords
                    sp += 1
                    if op == 2:
                        fill = <uint64_t>0xFFFFFFFFFFFFFFFFULL if args[i] else 0
                        for w in range(nwords):
                            top[w] = fill
                        continue
                    p = args[i]
                    fill = <uint64_t>0xFFFFFFFFFFFFFFFFULL if op == 1 else 0
                    if p < 6:
                        word = LOW_MASKS[p] ^ fill
                        for w in range(nwords):
                            top[w] = word
                    else:
                        for w in range(nwords):
                            top[w] = (<uint64_t>0xFFFFFFFFFFFFFFFFULL if (w >> (p - 6)) & 1 else 0) ^ fill
                else:
                    sp -= 1
                    top = stack + sp * nwords
                    below = top - nwords
                    if op == 3:
                        for w in range(nwords):
                            below[w] &= top[w]
                    else:
                        for w in range(nwords):
                            below[w] |= top[w]
            if nframes < 64:
                stack[0] &= ((<uint64_t>1) << nframes) - 1
        data = (<char *>stack)[:nwords * 8]
        return int.from_bytes(data, "little")
    finally:
        free(stack)
