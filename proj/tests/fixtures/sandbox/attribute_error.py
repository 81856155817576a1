class Model:
    def __getattr__(self, name):
        raise AttributeError(f"Invalid attribute name '{name}'")


model = Model()
model.update()
