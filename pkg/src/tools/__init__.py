from .seeding import SeedSplitter, StreamKey

__all__ = ["SeedSplitter", "StreamKey"]
