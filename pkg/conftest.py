"""Configure Django so pytest can run the Django test cases."""
import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "app.settings")
django.setup()
