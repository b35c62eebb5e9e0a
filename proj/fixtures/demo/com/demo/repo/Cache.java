package com.demo.repo;

class Cache { }
