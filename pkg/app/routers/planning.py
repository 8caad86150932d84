from typing import Optional

from fastapi import APIRouter, Query
from pydantic import BaseModel

from ..chebyshev import asymptotic_profile, best_plan, bound_profile, cheb_bound, rule_of_thumb_order
from ..config import get_settings
from ..errors import InvalidArgumentError
from ..models import AsymptoticProfile, BoundProfile, PlanQuery, PlanResult
from ..rational import Rational, parse_rational

router = APIRouter(prefix="/planning", tags=["Planning"])


class BoundResponse(BaseModel):
    n: int
    epsilon: Rational
    m: int
    bound: Rational


class AsymptoticResponse(BaseModel):
    profile: AsymptoticProfile
    rule_of_thumb_order: int


@router.get("/bound", summary="Single-order Chebyshev bound", response_model=BoundResponse)
def read_bound(
    n: int = Query(..., ge=1),
    eps: str = Query(..., description="Tolerance as num/den"),
    m: int = Query(..., ge=1),
) -> BoundResponse:
    epsilon = parse_rational(eps)
    return BoundResponse(n=n, epsilon=epsilon, m=m, bound=cheb_bound(n, epsilon, m))


@router.get("/profile", summary="Bounds for every order up to m_cap", response_model=BoundProfile)
def read_profile(
    n: int = Query(..., ge=1),
    eps: str = Query(..., description="Tolerance as num/den"),
    m_cap: Optional[int] = Query(None, ge=1),
    strict: bool = Query(True, description="Cap selectable orders at m_n"),
    validity_cap: Optional[int] = Query(None, ge=1),
) -> BoundProfile:
    """Rows past the validity cap are returned but not selectable."""
    m_cap = m_cap or get_settings().m_cap
    return bound_profile(n, parse_rational(eps), m_cap, strict=strict, validity_cap=validity_cap)


@router.get("/plan", summary="Minimal sample size", response_model=PlanResult)
def read_plan(
    eps: str = Query(..., description="Tolerance as num/den"),
    delta: Optional[str] = Query(None, description="Risk level; omit with coupled=true"),
    m: Optional[int] = Query(None, ge=1),
    m_cap: Optional[int] = Query(None, ge=1),
    strict: bool = False,
    coupled: bool = False,
) -> PlanResult:
    if m is not None and m_cap is not None:
        raise InvalidArgumentError("pass either m or m_cap, not both")
    try:
        query = PlanQuery(
            epsilon=parse_rational(eps),
            delta=None if delta is None else parse_rational(delta),
            m=m,
            m_cap=m_cap or get_settings().m_cap,
            strict=strict,
            coupled=coupled,
        )
    except ValueError as exc:
        raise InvalidArgumentError(str(exc)) from exc
    return best_plan(query)


@router.get("/asymptotic", summary="Large-n bounds and the optimal order", response_model=AsymptoticResponse)
def read_asymptotic(
    ntilde: str = Query(..., description="Effective sample size n eps^2 as num/den"),
    m_cap: Optional[int] = Query(None, ge=1),
) -> AsymptoticResponse:
    value = parse_rational(ntilde)
    profile = asymptotic_profile(value, m_cap or get_settings().m_cap)
    return AsymptoticResponse(profile=profile, rule_of_thumb_order=rule_of_thumb_order(value))
