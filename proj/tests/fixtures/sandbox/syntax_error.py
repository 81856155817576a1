from types import SimpleNamespace

model = SimpleNamespace(status=1 objval=3.0)
