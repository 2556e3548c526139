"""chromalg: exact algebra for formal groups, elliptic moduli, the Steenrod
algebra, p-typical structure constants and forms of K-theory, plus the
`verify` batch-check CLI."""

__version__ = "0.1.0"
