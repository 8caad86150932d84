from fastapi import APIRouter, Path, Query

from ..argmax import DEFAULT_WIDTH, argmax_report, moment_polynomial
from ..models import ArgmaxReport, IntPolynomial, MomentMethod, MomentValue
from ..moments import moment
from ..rational import parse_rational, render_rational

router = APIRouter(prefix="/moments", tags=["Moments"])


@router.get("/{n}/{m}", summary="Exact even central moment", response_model=MomentValue)
def read_moment(
    n: int = Path(..., ge=1),
    m: int = Path(..., ge=1),
    p: str = Query("1/2", description="Success probability as num/den or a decimal literal"),
    method: MomentMethod = Query("binomsum", description="Computation route"),
) -> MomentValue:
    """E S_n^(2m)(p) as an exact rational rendered "num/den"."""
    return moment(n, m, parse_rational(p), method)


@router.get("/{n}/{m}/polynomial", summary="Moment as a polynomial in p", response_model=IntPolynomial)
def read_polynomial(n: int = Path(..., ge=1), m: int = Path(..., ge=1)) -> IntPolynomial:
    """Integer coefficients of E S_n^(2m)(p), lowest power first."""
    return moment_polynomial(n, m)


@router.get("/{n}/{m}/argmax", summary="Maximizers of the moment over p", response_model=ArgmaxReport)
def read_argmax(
    n: int = Path(..., ge=1),
    m: int = Path(..., ge=1),
    width: str = Query(render_rational(DEFAULT_WIDTH), description="Target width of the isolating intervals"),
) -> ArgmaxReport:
    return argmax_report(n, m, parse_rational(width))
