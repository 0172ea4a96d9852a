"""Small result markers shared across modules."""


class _PositiveDimensional:
    """Returned instead of a length or order when the locus is not zero-dimensional."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "PositiveDimensional"

    __str__ = __repr__

    def __reduce__(self):
        return (_PositiveDimensional, ())


PositiveDimensional = _PositiveDimensional()
