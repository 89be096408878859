from functools import wraps
from flask import abort, request

import config


def require_admin_key(view):
    """Rejects requests whose X-Admin-Key header does not match ADMIN_KEY."""
    @wraps(view)
    def guarded(*args, **kwargs):
        key = request.headers.get("X-Admin-Key")
        if key != config.ADMIN_KEY:
            abort(401, description="Unauthorized access")
        return view(*args, **kwargs)
    return guarded
