# Source package






