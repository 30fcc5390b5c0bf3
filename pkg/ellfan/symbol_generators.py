import logging

from ellfan import settings


class SymbolGenerator(object):
    """Hands out fresh generic-point symbols for one computation session.

    Names come from a counter, so two sessions started the same way produce
    the same symbols.
    """

    def __init__(self, prefix=settings.SYMBOL_PREFIX, start=1):
        self.prefix = prefix
        self.counter = start
        self.symbols = []
        self.reserved = set()

    def reserve(self, symbols):
        """Mark symbols already in use (e.g. those of a given point)."""
        self.reserved.update(symbols)

    def request_symbol(self):
        a = self.create_symbol()
        while True:
            if a in self.symbols:
                logging.log(logging.ERROR, "Duplicate symbols encountered.")
                raise ValueError("duplicate symbol " + a)
            if a not in self.reserved:
                break
            a = self.create_symbol()
        self.symbols.append(a)
        return a

    def request_symbols(self, count):
        return [self.request_symbol() for _ in range(count)]

    def create_symbol(self):
        name = self.prefix + str(self.counter)
        self.counter += 1
        return name
