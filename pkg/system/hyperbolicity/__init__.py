# system/hyperbolicity - __init__.py