"""Sparse multihomogeneous polynomial arithmetic with exact coefficients.

Terms are stored as a map from dense exponent vectors (one entry per
ambient variable) to nonzero coefficients.  Coefficients are exact
rationals (fractions.Fraction, always reduced) or elements of a prime
field F_p stored as ints in [0, p).  Every polynomial carries a declared
multidegree, one integer per factor, and every stored term must match it
factor by factor.  Negative exponents are permitted only on factors the
polynomial flags as Laurent; user-facing text input never produces them.

Canonical term order is descending lexicographic on the exponent vector,
which for fixed multidegree agrees with graded lex.  Printing follows
that order, so reports are byte-reproducible, and parse(str(p)) == p.
"""

from __future__ import annotations

from fractions import Fraction

from .ambient import Ambient
from .errors import AmbientMismatchError, DegreeError, ParseError


def is_odd_prime(p: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the 2^31 cap we enforce."""
    if p < 3 or p % 2 == 0:
        return False
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        if a >= p:
            continue
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def check_prime(p: int):
    if not isinstance(p, int) or not is_odd_prime(p) or p >= 2**31:
        raise DegreeError(f"{p} is not an odd prime below 2^31")


def _coerce(value, prime):
    """Normalize a raw coefficient to the canonical representation."""
    if prime is None:
        return value if isinstance(value, Fraction) else Fraction(value)
    if isinstance(value, Fraction):
        den = value.denominator % prime
        if den == 0:
            raise DegreeError(f"denominator of {value} vanishes mod {prime}")
        return value.numerator * pow(den, -1, prime) % prime
    return value % prime


class MultiPoly:
    """A multihomogeneous (optionally Laurent) polynomial.

    Immutable by convention: no method mutates, all operations return new
    instances, so values are safe to share across threads.
    """

    __slots__ = ("ambient", "degrees", "terms", "prime", "laurent")

    def __init__(self, ambient: Ambient, degrees, terms, prime=None, laurent=frozenset()):
        if prime is not None:
            check_prime(prime)
        degrees = tuple(degrees)
        if len(degrees) != ambient.num_factors:
            raise DegreeError(
                f"declared degrees {degrees} do not match {ambient.num_factors} factors"
            )
        laurent = frozenset(laurent)
        offsets = ambient.var_offsets()
        clean = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != ambient.num_vars:
                raise DegreeError(f"exponent vector {exps} has wrong length")
            coeff = _coerce(coeff, prime)
            if coeff == 0:
                continue
            for f in range(ambient.num_factors):
                chunk = exps[offsets[f] : offsets[f + 1]]
                if sum(chunk) != degrees[f]:
                    raise DegreeError(
                        f"term {exps} has degree {sum(chunk)} on factor {f}, "
                        f"declared {degrees[f]}"
                    )
                if f not in laurent and any(e < 0 for e in chunk):
                    raise DegreeError(
                        f"negative exponent on non-Laurent factor {f} in term {exps}"
                    )
            clean[exps] = coeff
        self.ambient = ambient
        self.degrees = degrees
        self.terms = clean
        self.prime = prime
        self.laurent = laurent

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, ambient, degrees, prime=None, laurent=frozenset()):
        return cls(ambient, degrees, {}, prime, laurent)

    @classmethod
    def constant(cls, ambient, value, prime=None):
        zero_exps = (0,) * ambient.num_vars
        return cls(ambient, (0,) * ambient.num_factors, {zero_exps: value}, prime)

    @classmethod
    def monomial(cls, ambient, exps, coeff=1, prime=None, laurent=frozenset()):
        exps = tuple(exps)
        offsets = ambient.var_offsets()
        degrees = tuple(
            sum(exps[offsets[f] : offsets[f + 1]]) for f in range(ambient.num_factors)
        )
        return cls(ambient, degrees, {exps: coeff}, prime, laurent)

    @classmethod
    def variable(cls, ambient, name, prime=None):
        exps = [0] * ambient.num_vars
        exps[ambient.var_index(name)] = 1
        return cls.monomial(ambient, exps, 1, prime)

    # -- ring structure ----------------------------------------------

    def _check_compatible(self, other):
        if not isinstance(other, MultiPoly):
            raise TypeError(f"expected MultiPoly, got {type(other).__name__}")
        if other.ambient != self.ambient:
            raise AmbientMismatchError("operands live on different ambients")
        if other.prime != self.prime:
            raise AmbientMismatchError(
                f"coefficient fields differ: {self.prime} vs {other.prime}"
            )

    def __add__(self, other):
        self._check_compatible(other)
        if other.degrees != self.degrees:
            raise DegreeError(f"cannot add degrees {self.degrees} and {other.degrees}")
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            terms[exps] = terms.get(exps, 0) + coeff
        return MultiPoly(self.ambient, self.degrees, terms, self.prime,
                         self.laurent | other.laurent)

    def __neg__(self):
        return MultiPoly(self.ambient, self.degrees,
                         {e: -c for e, c in self.terms.items()},
                         self.prime, self.laurent)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_compatible(other)
        degrees = tuple(a + b for a, b in zip(self.degrees, other.degrees))
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                terms[exps] = terms.get(exps, 0) + c1 * c2
        return MultiPoly(self.ambient, degrees, terms, self.prime,
                         self.laurent | other.laurent)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        return MultiPoly(self.ambient, self.degrees,
                         {e: v * c for e, v in self.terms.items()},
                         self.prime, self.laurent)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.ambient == other.ambient and self.degrees == other.degrees
                and self.prime == other.prime and self.terms == other.terms)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    # -- structural operations ---------------------------------------

    def sorted_terms(self):
        """Terms in canonical (descending lexicographic) order."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def coeff_of(self, factor: int, exponents) -> "MultiPoly":
        """The polynomial coefficient of the given exponent pattern on one
        factor: terms matching it, with that factor's exponents zeroed and
        declared degree 0 there."""
        exponents = tuple(exponents)
        lo, hi = self._factor_span(factor)
        if len(exponents) != hi - lo:
            raise DegreeError(
                f"factor {factor} has {hi - lo} variables, got pattern {exponents}"
            )
        degrees = list(self.degrees)
        degrees[factor] = 0
        terms = {}
        blank = (0,) * (hi - lo)
        for exps, coeff in self.terms.items():
            if exps[lo:hi] == exponents:
                terms[exps[:lo] + blank + exps[hi:]] = coeff
        return MultiPoly(self.ambient, degrees, terms, self.prime,
                         self.laurent - {factor})

    def part_by_exponent(self, var_index: int, lo: int, hi: int) -> "MultiPoly":
        """Sub-polynomial of the terms whose exponent on one variable lies
        in the closed interval [lo, hi]."""
        terms = {e: c for e, c in self.terms.items() if lo <= e[var_index] <= hi}
        return MultiPoly(self.ambient, self.degrees, terms, self.prime, self.laurent)

    def _factor_span(self, factor):
        offsets = self.ambient.var_offsets()
        return offsets[factor], offsets[factor + 1]

    def substitute_factor(self, factor: int, values) -> "MultiPoly":
        """Substitute scalar values for all variables of one factor.

        The result has declared degree 0 on that factor.  Values must be
        nonzero wherever a negative exponent occurs.
        """
        lo, hi = self._factor_span(factor)
        values = [_coerce(v, self.prime) for v in values]
        if len(values) != hi - lo:
            raise DegreeError(f"factor {factor} needs {hi - lo} values")
        degrees = list(self.degrees)
        degrees[factor] = 0
        blank = (0,) * (hi - lo)
        terms = {}
        for exps, coeff in self.terms.items():
            scalar = coeff
            for v, e in zip(values, exps[lo:hi]):
                if e == 0:
                    continue
                if v == 0:
                    if e < 0:
                        raise DegreeError(
                            "zero substituted into a negative exponent"
                        )
                    scalar = 0
                    break
                scalar = scalar * self._power(v, e)
            if scalar == 0:
                continue
            key = exps[:lo] + blank + exps[hi:]
            terms[key] = terms.get(key, 0) + scalar
        return MultiPoly(self.ambient, degrees, terms, self.prime,
                         self.laurent - {factor})

    def _power(self, value, exponent):
        if self.prime is None:
            return Fraction(value) ** exponent
        return pow(value, exponent, self.prime)

    def evaluate(self, assignment: dict):
        """Exact evaluation at a point given as {variable name: value}.
        All ambient variables must be assigned; variables occurring with a
        negative exponent must get nonzero values."""
        names = self.ambient.var_names
        missing = [n for n in names if n not in assignment]
        if missing:
            raise DegreeError(f"missing assignment for {missing}")
        values = [_coerce(assignment[n], self.prime) for n in names]
        total = _coerce(0, self.prime)
        for exps, coeff in self.terms.items():
            prod = coeff
            for v, e in zip(values, exps):
                if e == 0:
                    continue
                if v == 0:
                    if e < 0:
                        raise DegreeError(
                            f"zero assigned to a variable with negative exponent"
                        )
                    prod = 0
                    break
                prod = prod * self._power(v, e)
            total = total + prod
        if self.prime is not None:
            total %= self.prime
        return total

    def partial_derivative(self, name: str) -> "MultiPoly":
        """Formal derivative; declared degree on the variable's factor
        drops by one.  Rejected when the variable carries a negative
        exponent anywhere."""
        idx = self.ambient.var_index(name)
        factor = self.ambient.factor_of_var(idx)
        if any(e[idx] < 0 for e in self.terms):
            raise DegreeError(f"cannot differentiate in Laurent variable {name}")
        degrees = list(self.degrees)
        degrees[factor] -= 1
        terms = {}
        for exps, coeff in self.terms.items():
            k = exps[idx]
            if k == 0:
                continue
            new = list(exps)
            new[idx] = k - 1
            key = tuple(new)
            terms[key] = terms.get(key, 0) + coeff * k
        return MultiPoly(self.ambient, degrees, terms, self.prime, self.laurent)

    def reduce_mod_p(self, prime: int) -> "MultiPoly":
        check_prime(prime)
        if self.prime is not None:
            raise DegreeError("polynomial already has prime-field coefficients")
        terms = {}
        for exps, coeff in self.terms.items():
            terms[exps] = _coerce(coeff, prime)
        return MultiPoly(self.ambient, self.degrees, terms, prime, self.laurent)

    def drop_laurent(self) -> "MultiPoly":
        """Clear the Laurent flags; fails if negative exponents remain."""
        return MultiPoly(self.ambient, self.degrees, self.terms, self.prime)

    def drop_factor(self, factor: int) -> "MultiPoly":
        """Reinterpret on the ambient with one unused factor removed."""
        lo, hi = self._factor_span(factor)
        if self.degrees[factor] != 0 or any(
            any(exps[lo:hi]) for exps in self.terms
        ):
            raise DegreeError(f"factor {factor} is in use; cannot drop it")
        old = self.ambient
        dist = old.distinguished
        if dist is not None:
            if dist == factor:
                dist = None
            elif dist > factor:
                dist -= 1
        new_ambient = Ambient(
            old.factors[:factor] + old.factors[factor + 1 :], dist
        )
        degrees = self.degrees[:factor] + self.degrees[factor + 1 :]
        terms = {e[:lo] + e[hi:]: c for e, c in self.terms.items()}
        laurent = frozenset(f if f < factor else f - 1 for f in self.laurent if f != factor)
        return MultiPoly(new_ambient, degrees, terms, self.prime, laurent)

    # -- text form ----------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ambient.var_names
        pieces = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(names, exps) if e != 0
            )
            negative = self.prime is None and coeff < 0
            mag = -coeff if negative else coeff
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f" - {body}" if negative else f" + {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"MultiPoly({self})"


# -- parsing -----------------------------------------------------------

_SYMBOLS = set("+-*/^()")


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in _SYMBOLS:
            tokens.append((ch, ch, i))
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    """Recursive descent over: expr := ["-"] term (("+"|"-") term)* ;
    term := factor ("*" factor)* ; factor := coeff | var ("^" int)? |
    "(" expr ")".  Arithmetic is done on raw {exponent vector: Fraction}
    dicts; the MultiPoly constructor validates homogeneity at the end."""

    def __init__(self, text, ambient, laurent):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ambient = ambient
        self.laurent = laurent
        self.nvars = ambient.num_vars

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self):
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected trailing {tok[1]!r}", tok[2])
        return result

    def expr(self):
        if self.peek()[0] == "-":
            self.next()
            acc = _dict_neg(self.term())
        else:
            acc = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            acc = _dict_add(acc, _dict_neg(rhs) if op == "-" else rhs)
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "*":
            self.next()
            acc = _dict_mul(acc, self.factor(), self.nvars)
        return acc

    def factor(self):
        kind, value, pos = self.peek()
        if kind == "int":
            self.next()
            coeff = Fraction(value)
            if self.peek()[0] == "/":
                self.next()
                den = self.expect("int")
                if den[1] == 0:
                    raise ParseError("zero denominator", den[2])
                coeff /= den[1]
            if coeff == 0:
                return {}
            return {(0,) * self.nvars: coeff}
        if kind == "ident":
            self.next()
            try:
                idx = self.ambient.var_index(value)
            except Exception:
                raise ParseError(f"unknown variable {value!r}", pos) from None
            exponent = 1
            if self.peek()[0] == "^":
                self.next()
                sign = 1
                if self.peek()[0] == "-":
                    self.next()
                    sign = -1
                exponent = sign * self.expect("int")[1]
                if exponent < 0 and self.ambient.factor_of_var(idx) not in self.laurent:
                    raise ParseError("negative exponents are not allowed here", pos)
            exps = [0] * self.nvars
            exps[idx] = exponent
            return {tuple(exps): Fraction(1)}
        if kind == "(":
            self.next()
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"expected a term, found {value!r}", pos)


def _dict_add(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s == 0:
            out.pop(e, None)
        else:
            out[e] = s
    return out


def _dict_neg(a):
    return {e: -c for e, c in a.items()}


def _dict_mul(a, b, nvars):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            key = tuple(x + y for x, y in zip(e1, e2))
            s = out.get(key, 0) + c1 * c2
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
    return out


def parse(text: str, ambient: Ambient, degrees, prime=None,
          laurent=frozenset()) -> MultiPoly:
    """Parse polynomial text and validate it against the declared
    multidegree.  Raises ParseError with a position on bad syntax and
    DegreeError on inhomogeneous input."""
    laurent = frozenset(laurent)
    terms = _Parser(text, ambient, laurent).parse()
    try:
        return MultiPoly(ambient, degrees, terms, prime, laurent)
    except DegreeError as exc:
        raise DegreeError(f"inhomogeneous input {text!r}: {exc}") from None


def reparse(p: MultiPoly) -> MultiPoly:
    """Round-trip a polynomial through its text form (used in tests)."""
    return parse(str(p), p.ambient, p.degrees, p.prime, p.laurent)
