"""Utils Package"""