"""Non-abelian first cohomology of finite groups acting on finite groups."""

__version__ = "0.1.0"
