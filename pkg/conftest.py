# Repository root marker: pytest puts this directory on sys.path so `rankform` and `main` import from the checkout.
