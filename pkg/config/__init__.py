# Config package






