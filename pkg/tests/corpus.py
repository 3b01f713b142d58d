"""Arrays and printed matrices shared by the test modules."""
import re

from mrd import MultiRiordanSpec, RiordanSpec, evaluate


def ev(text, order=30):
    return evaluate(text, order)


S = "(1+t-sqrt(1-6*t+t^2))/(4*t)"
R = "(1-t-sqrt(1-6*t+t^2))/(2*t)"


def type_spec(g, f, order=30):
    return RiordanSpec(ev(g, order), ev(f, order), "type")


def pascal_square(order=30):
    return type_spec("1/(1-t)", "1/(1-t)", order)


def delannoy_square(order=30):
    return type_spec("1/(1-t)", "(1+t)/(1-t)", order)


def schroeder_type(f, order=30):
    f = re.sub("[sr]", lambda m: f"({S if m.group() == 's' else R})", f)
    return type_spec(S, f, order)


SCHROEDER_F = {
    "1": "1",
    "s": "s",
    "s^2": "s^2",
    "(s-1)/t": "(s-1)/t",
    "s(s-1)/(t(2-s))": "s*(s-1)/(t*(2-s))",
    "r": "r",
}

# leading blocks as printed
PRINTED = {
    "pascal_square": [[1, 1, 1, 1, 1], [1, 2, 3, 4, 5], [1, 3, 6, 10, 15], [1, 4, 10, 20, 35]],
    "delannoy_triangle": [
        [1, 0, 0, 0, 0], [1, 1, 0, 0, 0], [1, 3, 1, 0, 0], [1, 5, 5, 1, 0], [1, 7, 13, 7, 1],
    ],
    "delannoy_square_printed": [[1, 1, 1, 1, 1], [1, 3, 5, 7, 9], [1, 13, 25, 41, 61], [1, 25, 63, 129, 231]],
    "s,1": [[1] * 5, [1] * 5, [3] * 5, [11] * 5],
    "s,s": [[1] * 5, [1, 2, 3, 4, 5], [3, 7, 12, 18, 25], [11, 28, 52, 84, 125]],
    "s,s^2": [[1] * 5, [1, 3, 5, 7, 9], [3, 12, 25, 42, 63], [11, 52, 125, 238, 399]],
    "s,(s-1)/t": [[1] * 5, [1, 4, 7, 10, 13], [3, 17, 40, 72, 113], [11, 76, 216, 458, 829]],
    "s,s(s-1)/(t(2-s))": [[1] * 5, [1, 6, 11, 16, 21], [3, 33, 88, 168, 273], [11, 178, 620, 1462, 2829]],
    "s,r": [[1] * 5, [1, 3, 5, 7, 9], [3, 11, 23, 39, 59], [11, 45, 107, 205, 347]],
    "cubic": [
        [1, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0, 0],
        [1, 0, 0, 1, 0, 0, 0, 0, 0],
        [0, 2, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 3, 0, 0, 1, 0, 0, 0],
        [1, 0, 0, 2, 0, 0, 1, 0, 0],
        [0, 3, 0, 0, 3, 0, 0, 1, 0],
        [0, 0, 5, 0, 0, 4, 0, 0, 1],
    ],
    "cubic_P": [
        [1, 0, 0, 1, 0, 0, 0, 0, 0],
        [0, 2, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 3, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0, 1, 0, 0],
        [0, -1, 0, 0, 1, 0, 0, 1, 0],
        [0, 0, -4, 0, 0, 1, 0, 0, 1],
        [0, 0, 0, 0, 0, 0, 1, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, 1, 0],
        [0, 0, 8, 0, 0, 0, 0, 0, 1],
    ],
    "cubic_type": [
        [1, 1, 1, 1, 1, 1, 1, 1, 1],
        [0] * 9,
        [0] * 9,
        [1, 2, 3, 2, 3, 4, 3, 4, 5],
        [0] * 9,
        [0] * 9,
        [1, 3, 5, 3, 6, 9, 6, 10, 14],
        [0] * 9,
        [0] * 9,
        [1, 4, 7, 4, 10, 16, 10, 20, 30],
    ],
    "cubic_compressed": [
        [1, 0, 0, 0, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 0, 0, 0],
        [1, 2, 1, 0, 0, 0, 0, 0],
        [1, 3, 3, 1, 0, 0, 0, 0],
        [1, 4, 5, 2, 1, 0, 0, 0],
        [1, 5, 7, 3, 3, 1, 0, 0],
        [1, 6, 9, 4, 6, 4, 1, 0],
        [1, 7, 11, 5, 10, 9, 4, 1],
    ],
    "cubic_type_compressed": [
        [1, 1, 1, 1, 1, 1, 1, 1, 1],
        [1, 2, 3, 2, 3, 4, 3, 4, 5],
        [1, 3, 5, 3, 6, 9, 6, 10, 14],
        [1, 4, 7, 4, 10, 16, 10, 20, 30],
    ],
}


def cubic(order=30):
    return MultiRiordanSpec(3, ev("1/(1-t^3)", order), (ev("t/(1-t^3)", order), ev("t*(1+t^3)", order), ev("t/(1+t^3)", order)))


def cubic_type(order=30):
    return MultiRiordanSpec(3, ev("1/(1-t^3)", order), (ev("1/(1-t^3)", order), ev("1+t^3", order), ev("1/(1+t^3)", order)))


def double_ex(order=40):
    """The double array whose compression is (1/(1-t); t, t/(1-t))."""
    return MultiRiordanSpec(2, ev("1/(1-t^2)", order), (ev("t", order), ev("t/(1-t^2)", order)))


def as_ints(m):
    return m.as_lists(integral_as_int=True)
