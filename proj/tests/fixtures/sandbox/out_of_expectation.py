print("solver finished without a summary line")
raise SystemExit(0)
