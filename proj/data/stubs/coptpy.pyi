# Interface stub for the coptpy modeling API subset used by generated code.
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

class COPT:
    """Solver constants."""
    OPTIMAL: int = 1
    """Status: an optimal solution was found."""
    INFEASIBLE: int = 2
    """Status: the model is infeasible."""
    UNBOUNDED: int = 3
    """Status: the objective is unbounded."""
    INF_OR_UNB: int = 4
    UNSTARTED: int = 0
    TIMEOUT: int = 8
    MINIMIZE: int = 1
    """Objective sense: minimize."""
    MAXIMIZE: int = -1
    """Objective sense: maximize."""
    CONTINUOUS: str = "C"
    """Variable type: continuous."""
    INTEGER: str = "I"
    """Variable type: general integer."""
    BINARY: str = "B"
    """Variable type: binary."""
    INFINITY: float = 1e30
    """Value treated as infinite in bounds."""
    LESS_EQUAL: str = "L"
    GREATER_EQUAL: str = "G"
    EQUAL: str = "E"

class Envr:
    """Solver environment; creates models."""
    def __init__(self, params: Optional[Dict[str, Any]] = None) -> None: ...
    def createModel(self, name: str = "") -> Model:
        """Create an empty model owned by this environment."""
        ...
    def close(self) -> None:
        """Release the environment."""
        ...

class Var:
    """Decision variable."""
    @property
    def x(self) -> float:
        """Value in the current solution."""
        ...
    @property
    def lb(self) -> float:
        """Lower bound."""
        ...
    @property
    def ub(self) -> float:
        """Upper bound."""
        ...
    @property
    def vtype(self) -> str:
        """Variable type: COPT.CONTINUOUS, COPT.INTEGER or COPT.BINARY."""
        ...
    @property
    def name(self) -> str:
        """Variable name."""
        ...
    def getName(self) -> str:
        """Variable name."""
        ...
    def getType(self) -> str:
        """Variable type."""
        ...
    def setName(self, newname: str) -> None: ...
    def getInfo(self, infoname: str) -> float:
        """Solution information such as "Value" or "RedCost"."""
        ...
    def setInfo(self, infoname: str, newval: float) -> None: ...

class Constraint:
    """Linear constraint."""
    @property
    def name(self) -> str: ...
    @property
    def lb(self) -> float: ...
    @property
    def ub(self) -> float: ...
    @property
    def pi(self) -> float:
        """Dual value in the current solution."""
        ...
    def getName(self) -> str: ...
    def getInfo(self, infoname: str) -> float:
        """Solution information such as "Slack" or "Dual"."""
        ...

class LinExpr:
    """Linear expression: constant plus weighted variables."""
    def __init__(self, arg1: Union[float, Var, None] = 0.0, arg2: Optional[float] = None) -> None: ...
    def addTerm(self, var: Var, coeff: float = 1.0) -> None:
        """Add coeff * var."""
        ...
    def addTerms(self, vars: Union[Var, Sequence[Var]], coeffs: Union[float, Sequence[float]]) -> None:
        """Add several terms at once."""
        ...
    def addConstant(self, constant: float) -> None: ...
    def getValue(self) -> float:
        """Value under the current solution."""
        ...
    def getConst(self) -> float: ...
    def size(self) -> int:
        """Number of terms."""
        ...

class tupledict:
    """Dictionary keyed by tuples, returned by Model.addVars."""
    def sum(self, *pattern: Any) -> LinExpr:
        """Sum of the values whose keys match the pattern ('*' matches any)."""
        ...
    def prod(self, coeff: Dict[Any, float], *pattern: Any) -> LinExpr:
        """Weighted sum of matching values."""
        ...
    def select(self, *pattern: Any) -> List[Any]: ...
    def keys(self) -> List[Any]: ...
    def values(self) -> List[Any]: ...

class Model:
    """Optimization model."""
    @property
    def status(self) -> int:
        """Solution status, compared against COPT.OPTIMAL and friends."""
        ...
    @property
    def objval(self) -> float:
        """Objective value of the current solution."""
        ...
    def addVar(self, lb: float = 0.0, ub: float = COPT.INFINITY, obj: float = 0.0,
               vtype: str = COPT.CONTINUOUS, name: str = "",
               column: Optional[Any] = None) -> Var:
        """Add one variable and return it."""
        ...
    def addVars(self, *indices: Any, lb: float = 0.0, ub: float = COPT.INFINITY,
                obj: float = 0.0, vtype: str = COPT.CONTINUOUS,
                nameprefix: str = "C") -> tupledict:
        """Add a multi-indexed family of variables."""
        ...
    def addConstr(self, lhs: Any, sense: Optional[str] = None, rhs: Optional[Any] = None,
                  name: str = "") -> Constraint:
        """Add one linear constraint, usually written as an expression like x + y <= 3."""
        ...
    def addConstrs(self, generator: Iterable[Any], nameprefix: str = "R") -> tupledict:
        """Add constraints from a generator expression."""
        ...
    def addBoundConstr(self, expr: Any, lb: float = -COPT.INFINITY, ub: float = COPT.INFINITY,
                       name: str = "") -> Constraint:
        """Add lb <= expr <= ub."""
        ...
    def setObjective(self, expr: Any, sense: Optional[int] = None) -> None:
        """Set the objective expression and optionally the sense."""
        ...
    def setObjSense(self, sense: int) -> None: ...
    def getObjective(self) -> LinExpr: ...
    def solve(self) -> None:
        """Solve the model (LP or MIP)."""
        ...
    def solveLP(self) -> None:
        """Solve the LP relaxation."""
        ...
    def getVars(self) -> List[Var]: ...
    def getConstrs(self) -> List[Constraint]: ...
    def getVarByName(self, name: str) -> Var: ...
    def getConstrByName(self, name: str) -> Constraint: ...
    def getAttr(self, attrname: str) -> float:
        """Model attribute such as "LpObjval" or "Cols"."""
        ...
    def getInfo(self, infoname: str, args: Any) -> Any: ...
    def setParam(self, paramname: str, newval: Any) -> None:
        """Set a solver parameter such as "TimeLimit"."""
        ...
    def getParam(self, paramname: str) -> Any: ...
    def remove(self, args: Any) -> None: ...
    def reset(self) -> None: ...
    def write(self, filename: str) -> None:
        """Write the model or solution; format follows the file suffix."""
        ...

def quicksum(terms: Iterable[Any]) -> LinExpr:
    """Build a linear expression from an iterable of terms."""
    ...
