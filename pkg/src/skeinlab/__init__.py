from .exactalg import LaurentPoly, RationalFunc, parse, render
