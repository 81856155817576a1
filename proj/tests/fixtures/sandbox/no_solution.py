from types import SimpleNamespace

COPT = SimpleNamespace(OPTIMAL=1, INFEASIBLE=2)
model = SimpleNamespace(status=COPT.INFEASIBLE, objval=None)
