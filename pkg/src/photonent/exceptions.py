"""
Error hierarchy shared by all photonent modules.

Library code logs the message at ERROR level before raising, the CLI maps every
:class:`PhotonEntError` to a usage error.
"""


class PhotonEntError(Exception):
    """
    Base class for all errors raised by photonent.
    """


class InvalidInput(PhotonEntError, ValueError):
    """
    An argument violates a precondition: out-of-range parameter, non-finite entries,
    unnormalized state, inconsistent shapes.
    """


class BasisMismatch(PhotonEntError, ValueError):
    """
    Two objects that must share a basis or frequency grid do not.
    """
